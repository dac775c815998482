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

#ifndef TG__VEHICLE__TRACKER_HPP_
#define TG__VEHICLE__TRACKER_HPP_

#include <functional>
#include <optional>

#include "tg/traj/types.hpp"
#include "tg/vehicle/controller.hpp"
#include "tg/vehicle/model.hpp"
#include "tg/vehicle/run_record.hpp"

namespace tg::vehicle
{
struct TrackerConfig
{
  ControllerParams controller;
  /// Cross-track error that counts as collision risk, m.
  double divergence_threshold{1.0};
  /// Path end is reached when s >= length - end_tolerance and v < stop_speed.
  double end_tolerance{0.1};
  double stop_speed{0.05};
  /// Minimum reference speed before the end zone, so the asymptotic tail of
  /// the decel ramp does not stall the vehicle short of the goal.
  double creep_speed{0.1};
};

enum class TrackerMode { Idle, Tracking, Mrm };

struct TrackerEvents
{
  bool path_end{false};
  bool diverged{false};
  bool mrm_complete{false};
};

/// Onboard control: tracks an approved trajectory, keeps a fresh stop plan at
/// every control step, and executes that plan when triggered.
class Tracker
{
public:
  Tracker(VehicleParams params, traj::LimitSet limits, TrackerConfig config = {});

  void start(traj::Trajectory traj);

  /// Regenerates the stop plan from `state` and makes it the reference at once.
  /// Without an active path the plan is a standstill at the current position.
  const traj::MrmPlan & trigger_mrm(const VehicleState & state, double now_s);

  /// Runs a given plan, steering along its own points.
  void execute_plan(traj::MrmPlan plan, double now_s);

  /// One control period: progress, plan refresh, command, dynamics.
  TrackerEvents step(VehicleState & state, double now_s, double dt = kControlPeriod);

  TrackerMode mode() const { return mode_; }
  double s_progress() const { return progress_.s(); }
  double cross_track() const { return progress_.cross_track(); }
  const std::optional<traj::Trajectory> & trajectory() const { return traj_; }
  const std::optional<traj::MrmPlan> & latest_plan() const { return latest_plan_; }
  const std::optional<traj::MrmPlan> & active_plan() const { return active_plan_; }
  std::optional<double> trigger_time() const { return trigger_time_; }
  /// Time of the first control step that used the active plan.
  std::optional<double> activation_time() const { return activation_time_; }
  /// Curvature of the reference at the current progress.
  double reference_curvature() const;
  const VehicleParams & params() const { return params_; }
  const traj::LimitSet & limits() const { return limits_; }
  TrackerConfig & config() { return config_; }

private:
  Command tracking_command(const VehicleState & state) const;
  Command mrm_command(const VehicleState & state) const;

  VehicleParams params_;
  traj::LimitSet limits_;
  TrackerConfig config_;
  TrackerMode mode_{TrackerMode::Idle};
  std::optional<traj::Trajectory> traj_;
  std::optional<traj::MrmPlan> latest_plan_;
  std::optional<traj::MrmPlan> active_plan_;
  bool steer_on_plan_{false};
  std::optional<double> trigger_time_;
  std::optional<double> activation_time_;
  ProgressEstimator progress_;
};

struct TrackingHooks
{
  /// Polled after every control step; returning true triggers the stop plan.
  std::function<bool(double t, const VehicleState & state, double s_progress)> trigger;
  /// Divergence triggers the stop plan (collision risk) when set.
  bool stop_on_divergence{true};
  double max_time_s{600.0};
};

struct TrackingOutcome
{
  RunRecord record;
  VehicleState final_state;
  bool reached_end{false};
  bool mrm_triggered{false};
  bool diverged{false};
  double trigger_time{0.0};
  double activation_time{0.0};
  double trigger_s{0.0};
  double trigger_v{0.0};
  double final_s{0.0};
  double max_cross_track{0.0};
  /// max over steps of v^2 |kappa_ref| / a_lat_max while tracking.
  double max_lateral_ratio{0.0};
  int plan_regressions{0};
};

/// Stand-alone tracking run without the protocol: 100 Hz control, 50 Hz record
/// rows, until the path end, a completed stop, or the time limit.
TrackingOutcome tracking_loop(
  const traj::Trajectory & traj, VehicleState state0, const VehicleParams & params,
  const TrackerConfig & config = {}, const TrackingHooks & hooks = {});

/// Executes a stop plan from `state0` until standstill.
TrackingOutcome mrm_execute(
  const traj::MrmPlan & plan, VehicleState state0, const VehicleParams & params,
  const traj::LimitSet & limits, const TrackerConfig & config = {});

}  // namespace tg::vehicle

#endif  // TG__VEHICLE__TRACKER_HPP_
