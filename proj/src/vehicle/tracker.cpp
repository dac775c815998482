// Copyright 2026 The TG Teleoperation Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tg/vehicle/tracker.hpp"

#include <algorithm>
#include <cmath>

#include "tg/traj/mrm.hpp"
#include "tg/traj/trajectory.hpp"

namespace tg::vehicle
{
namespace
{
constexpr int kRecordEvery = 2;  // 50 Hz rows at 100 Hz control

RunRow row_of(const VehicleState & s, double t, double s_progress, const char * phase, bool mrm)
{
  return RunRow{t, s.x, s.y, s.psi, s.v, s.a, s_progress, phase, mrm};
}
}  // namespace

Tracker::Tracker(VehicleParams params, traj::LimitSet limits, TrackerConfig config)
: params_(params), limits_(limits), config_(config)
{
  validate(params_);
  traj::validate(limits_);
}

void Tracker::start(traj::Trajectory traj)
{
  traj::validate(traj);
  progress_.reset(traj.points.front().s);
  traj_ = std::move(traj);
  latest_plan_.reset();
  active_plan_.reset();
  steer_on_plan_ = false;
  trigger_time_.reset();
  activation_time_.reset();
  mode_ = TrackerMode::Tracking;
}

const traj::MrmPlan & Tracker::trigger_mrm(const VehicleState & state, double now_s)
{
  traj::MrmPlan plan;
  if (traj_ && mode_ != TrackerMode::Idle) {
    plan = traj::generate_mrm(*traj_, progress_.s(), state.v, limits_, now_s);
  } else {
    plan.points = {traj::PathPoint{state.x, state.y, state.psi, 0.0, progress_.s()}};
    plan.v = {0.0};
    plan.generated_at_s = progress_.s();
    plan.generated_at_time = now_s;
  }
  active_plan_ = std::move(plan);
  steer_on_plan_ = false;
  trigger_time_ = now_s;
  activation_time_.reset();
  mode_ = TrackerMode::Mrm;
  return *active_plan_;
}

void Tracker::execute_plan(traj::MrmPlan plan, double now_s)
{
  progress_.reset(plan.points.front().s);
  traj_.reset();
  active_plan_ = std::move(plan);
  steer_on_plan_ = true;
  trigger_time_ = now_s;
  activation_time_.reset();
  mode_ = TrackerMode::Mrm;
}

double Tracker::reference_curvature() const
{
  if (!traj_) {
    return 0.0;
  }
  return traj::interpolate_point(traj_->points, progress_.s()).curvature;
}

Command Tracker::tracking_command(const VehicleState & state) const
{
  const auto & t = *traj_;
  const double s = progress_.s();
  const double end_s = t.points.back().s;
  Command cmd;
  cmd.steer = pure_pursuit_steer(state, t.points, s, params_, config_.controller);
  if (s >= end_s - config_.end_tolerance) {
    cmd.accel = state.v > 0.0 ? -limits_.d_max : 0.0;  // brake and hold at the end
    return cmd;
  }
  // Reference taken one actuator lag ahead, compared with the predicted speed.
  const double s_lead = std::min(s + state.v * params_.actuator_lag, end_s);
  double v_ref = traj::speed_at(t.points, t.v, s_lead);
  double a_ff = traj::accel_at(t.points, t.v, s_lead);
  if (v_ref < config_.creep_speed) {
    v_ref = config_.creep_speed;
    a_ff = std::max(a_ff, 0.0);
  }
  const double v_pred = state.v + state.a * params_.actuator_lag;
  cmd.accel = a_ff + config_.controller.k_p * (v_ref - v_pred);
  return cmd;
}

Command Tracker::mrm_command(const VehicleState & state) const
{
  const auto & plan = *active_plan_;
  const double s = progress_.s();
  Command cmd;
  if (steer_on_plan_) {
    cmd.steer = pure_pursuit_steer(state, plan.points, s, params_, config_.controller);
  } else if (traj_) {
    cmd.steer = pure_pursuit_steer(state, traj_->points, s, params_, config_.controller);
  } else {
    cmd.steer = state.steer;
  }
  const double v_ref = plan.points.size() >= 2 ? traj::speed_at(plan.points, plan.v, s) : 0.0;
  if (v_ref <= 0.0) {
    cmd.accel = state.v > 0.0 ? -limits_.d_mrm : 0.0;
    return cmd;
  }
  // Never accelerate during a stop; braking beyond the plan is allowed.
  const Reference ref{plan.points, plan.v};
  cmd.accel = std::min(speed_command(state, ref, s, config_.controller, params_.actuator_lag), 0.0);
  return cmd;
}

TrackerEvents Tracker::step(VehicleState & state, double now_s, double dt)
{
  TrackerEvents ev;
  Command cmd;
  switch (mode_) {
    case TrackerMode::Idle:
      cmd.steer = state.steer;
      cmd.accel = state.v > 0.0 ? -limits_.d_max : 0.0;
      break;
    case TrackerMode::Tracking: {
      const auto & t = *traj_;
      progress_.update(t.points, state.x, state.y);
      const double s = std::clamp(progress_.s(), t.points.front().s, t.points.back().s);
      latest_plan_ = traj::generate_mrm(t, s, state.v, limits_, now_s);
      if (progress_.cross_track() > config_.divergence_threshold) {
        ev.diverged = true;
      }
      if (s >= t.points.back().s - config_.end_tolerance && state.v < config_.stop_speed) {
        ev.path_end = true;
        mode_ = TrackerMode::Idle;
        cmd.steer = state.steer;
        cmd.accel = state.v > 0.0 ? -limits_.d_max : 0.0;
        break;
      }
      cmd = tracking_command(state);
      break;
    }
    case TrackerMode::Mrm:
      if (!activation_time_) {
        activation_time_ = now_s;
      }
      if (steer_on_plan_) {
        progress_.update(active_plan_->points, state.x, state.y);
      } else if (traj_) {
        progress_.update(traj_->points, state.x, state.y);
      }
      cmd = mrm_command(state);
      break;
  }
  state = vehicle_step(state, cmd.steer, cmd.accel, dt, params_);
  if (mode_ == TrackerMode::Mrm && state.v == 0.0) {
    ev.mrm_complete = true;
    mode_ = TrackerMode::Idle;
  }
  return ev;
}

namespace
{
TrackingOutcome run(Tracker & tracker, VehicleState state, const TrackingHooks & hooks)
{
  TrackingOutcome out;
  const auto & traj = tracker.trajectory();
  const double a_lat = tracker.limits().a_lat_max;
  double last_plan_s = -1.0;
  const int max_steps = static_cast<int>(hooks.max_time_s / kControlPeriod);
  for (int k = 0; k < max_steps; ++k) {
    const double now = k * kControlPeriod;
    const bool tracking = tracker.mode() == TrackerMode::Tracking;
    const auto ev = tracker.step(state, now);
    out.max_cross_track = std::max(out.max_cross_track, tracker.cross_track());
    if (tracking && traj) {
      out.max_lateral_ratio = std::max(
        out.max_lateral_ratio, state.v * state.v * std::abs(tracker.reference_curvature()) / a_lat);
      if (const auto & plan = tracker.latest_plan()) {
        if (plan->generated_at_s < last_plan_s) ++out.plan_regressions;
        last_plan_s = plan->generated_at_s;
      }
    }
    if (k % kRecordEvery == 0) {
      const bool mrm = tracker.mode() == TrackerMode::Mrm || out.mrm_triggered;
      out.record.rows.push_back(row_of(state, state.t, tracker.s_progress(),
                                       mrm ? "EmergencyStop" : "TrajectoryTracking", mrm));
    }
    if (ev.path_end) {
      out.reached_end = true;
      break;
    }
    if (ev.mrm_complete) {
      break;
    }
    bool fire = false;
    if (ev.diverged && !out.diverged) {
      out.diverged = true;
      fire = hooks.stop_on_divergence;
    }
    if (tracker.mode() == TrackerMode::Tracking && hooks.trigger && hooks.trigger(state.t, state, tracker.s_progress())) {
      fire = true;
    }
    if (fire && !out.mrm_triggered) {
      out.mrm_triggered = true;
      out.trigger_time = state.t;
      out.trigger_s = tracker.s_progress();
      out.trigger_v = state.v;
      tracker.trigger_mrm(state, state.t);
    }
  }
  if (tracker.activation_time()) out.activation_time = *tracker.activation_time();
  out.final_state = state;
  out.final_s = tracker.s_progress();
  return out;
}
}  // namespace

TrackingOutcome tracking_loop(
  const traj::Trajectory & traj, VehicleState state0, const VehicleParams & params,
  const TrackerConfig & config, const TrackingHooks & hooks)
{
  Tracker tracker(params, traj.limits, config);
  tracker.start(traj);
  state0.t = 0.0;
  return run(tracker, state0, hooks);
}

TrackingOutcome mrm_execute(
  const traj::MrmPlan & plan, VehicleState state0, const VehicleParams & params,
  const traj::LimitSet & limits, const TrackerConfig & config)
{
  Tracker tracker(params, limits, config);
  tracker.execute_plan(plan, 0.0);
  state0.t = 0.0;
  auto out = run(tracker, state0, TrackingHooks{});
  out.mrm_triggered = true;
  return out;
}

}  // namespace tg::vehicle
