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

#include "tg/session/endpoints.hpp"

#include <cmath>

#include <spdlog/spdlog.h>

#include "tg/traj/trajectory.hpp"
#include "tg/vehicle/check.hpp"

namespace tg::session
{
using protocol::MessageType;
using protocol::OperatorEvent;
using protocol::OperatorPhase;
using protocol::VehicleEvent;
using protocol::VehiclePhase;

namespace
{
constexpr double kStandstill = 0.05;

double ms_to_s(std::int64_t ms) { return static_cast<double>(ms) / 1000.0; }
}  // namespace

// ---------------------------------------------------------------- operator

OperatorEndpoint::OperatorEndpoint(const Scenario & scenario, SendFn send)
: scenario_(scenario), send_(std::move(send))
{
  phase_log_.push_back({0, phase_});
}

void OperatorEndpoint::send(protocol::Payload payload, std::int64_t now_ms)
{
  send_(outbox_.stamp(std::move(payload), now_ms));
}

void OperatorEndpoint::set_phase(OperatorPhase next, std::int64_t now_ms)
{
  if (next == phase_) {
    return;
  }
  previous_phase_ = phase_;
  phase_ = next;
  phase_since_ = now_ms;
  phase_log_.push_back({now_ms, next});
  if (next == OperatorPhase::EmergencyStopped) {
    mrm_completed_ms_.reset();
  }
  if (next == OperatorPhase::Monitoring) {
    tracking_started_ = false;
  }
  spdlog::debug("[{} ms] operator -> {}", now_ms, protocol::to_string(next));
}

bool OperatorEndpoint::step(OperatorEvent event, std::int64_t now_ms)
{
  protocol::Step<OperatorPhase> s;
  try {
    s = protocol::state_step_operator(phase_, event);
  } catch (const protocol::IllegalTransition & e) {
    spdlog::warn("[{} ms] operator: {}", now_ms, e.what());
    return false;
  }
  const OperatorPhase from = phase_;
  for (const auto type : s.emit) {
    switch (type) {
      case MessageType::TakeoverAck: send(protocol::TakeoverAck{}, now_ms); break;
      case MessageType::TrajectoryProposal: send(protocol::TrajectoryProposal{draft_, *proposal_}, now_ms); break;
      case MessageType::TrajectoryApprove: send(protocol::TrajectoryApprove{proposal_->id}, now_ms); break;
      case MessageType::TrajectoryReject: send(protocol::TrajectoryReject{proposal_->id}, now_ms); break;
      case MessageType::EmergencyStop: send(protocol::EmergencyStop{}, now_ms); break;
      case MessageType::SessionEnd: send(protocol::SessionEnd{session_end_goal_.value_or(false)}, now_ms); break;
      default: break;
    }
  }
  if (from == OperatorPhase::Idle || from == OperatorPhase::Handover) {
    if (s.next == OperatorPhase::Takeover) monitor_.arm(now_ms);
  }
  set_phase(s.next, now_ms);
  return true;
}

bool OperatorEndpoint::in_goal() const
{
  return vehicle_ && std::hypot(vehicle_->x - scenario_.goal.x, vehicle_->y - scenario_.goal.y) <= scenario_.goal.radius &&
         vehicle_->v < kStandstill;
}

void OperatorEndpoint::on_message(const protocol::Message & msg, std::int64_t now_ms)
{
  monitor_.on_arrival(now_ms);
  link_lost_ = false;
  if (const auto * vs = std::get_if<protocol::VehicleStateReport>(&msg.payload)) {
    vehicle_ = *vs;
    return;
  }
  OperatorEvent event;
  if (!protocol::operator_event_for(msg, event)) {
    return;
  }
  if (const auto * c = std::get_if<protocol::TrajectoryChecked>(&msg.payload)) {
    // Results for superseded proposals are stale.
    if (!proposal_ || c->id != proposal_->id || phase_ != OperatorPhase::AwaitCheck) {
      spdlog::info("[{} ms] operator: ignoring check result for proposal {}", now_ms, c->id);
      return;
    }
    last_check_rejected_ = c->status == protocol::CheckStatus::Rejected;
    last_reasons_ = c->reasons;
    if (last_check_rejected_) ++rejected_checks_;
  }
  if (event == OperatorEvent::RecvTrackingStarted && phase_ == OperatorPhase::Monitoring) {
    tracking_started_ = true;
    active_ = proposal_;
  }
  if (event == OperatorEvent::RecvMrmCompleted) {
    step(event, now_ms);
    if (phase_ == OperatorPhase::EmergencyStopped) mrm_completed_ms_ = now_ms;
    return;
  }
  step(event, now_ms);
}

void OperatorEndpoint::tick(std::int64_t now_ms)
{
  if (now_ms % protocol::kHeartbeatPeriodMs == 0) {
    send(protocol::Heartbeat{}, now_ms);
  }
  if (protocol::in_session(phase_) && monitor_.poll_loss_edge(now_ms)) {
    link_lost_ = true;
    spdlog::warn("[{} ms] operator: link lost", now_ms);
  }
}

bool OperatorEndpoint::apply(const UiCommand & cmd, std::int64_t now_ms)
{
  auto log = [&](bool ok, std::string note = {}) {
    commands_.push_back({now_ms, cmd, ok, std::move(note)});
    return ok;
  };
  switch (cmd.kind) {
    case UiCommandKind::Takeover: return log(step(OperatorEvent::CmdTakeover, now_ms));
    case UiCommandKind::AddWaypoint:
      if (phase_ != OperatorPhase::TrajectoryCreation) return log(false, "not creating");
      if (!std::isfinite(cmd.x) || !std::isfinite(cmd.y)) return log(false, "non-finite waypoint");
      draft_.push_back({cmd.x, cmd.y});
      return log(true);
    case UiCommandKind::UndoWaypoint:
      if (phase_ != OperatorPhase::TrajectoryCreation || draft_.empty()) return log(false, "nothing to undo");
      draft_.pop_back();
      return log(true);
    case UiCommandKind::Clear:
      if (phase_ != OperatorPhase::TrajectoryCreation) return log(false, "not creating");
      draft_.clear();
      return log(true);
    case UiCommandKind::Submit: {
      if (phase_ != OperatorPhase::TrajectoryCreation) return log(false, "not creating");
      std::vector<traj::Waypoint> wps;
      if (vehicle_) {
        wps.push_back({vehicle_->x, vehicle_->y});
      } else {
        wps.push_back({scenario_.start_pose.x, scenario_.start_pose.y});
      }
      wps.insert(wps.end(), draft_.begin(), draft_.end());
      try {
        proposal_ = traj::build_trajectory(wps, scenario_.limits, next_traj_id_);
      } catch (const traj::TrajError & e) {
        return log(false, e.what());
      }
      ++next_traj_id_;
      return log(step(OperatorEvent::CmdSubmit, now_ms));
    }
    case UiCommandKind::Approve: {
      const bool ok = step(OperatorEvent::CmdApprove, now_ms);
      if (ok) draft_.clear();
      return log(ok);
    }
    case UiCommandKind::Reject: return log(step(OperatorEvent::CmdReject, now_ms));
    case UiCommandKind::EStop: return log(step(OperatorEvent::CmdEStop, now_ms));
    case UiCommandKind::Acknowledge: return log(step(OperatorEvent::CmdAcknowledge, now_ms));
    case UiCommandKind::EndSession:
      if (!session_end_goal_ || phase_ != OperatorPhase::Handover) session_end_goal_ = in_goal();
      return log(step(OperatorEvent::CmdEndSession, now_ms));
  }
  return log(false, "unknown command");
}

OperatorView OperatorEndpoint::view(std::int64_t now_ms) const
{
  OperatorView v;
  v.now_ms = now_ms;
  v.phase = phase_;
  v.previous_phase = previous_phase_;
  v.phase_since_ms = phase_since_;
  v.vehicle = vehicle_;
  v.vehicle_in_goal = in_goal();
  v.draft_size = draft_.size();
  v.tracking_started = tracking_started_;
  v.mrm_completed_ms = mrm_completed_ms_;
  v.link_lost = link_lost_;
  v.last_check_rejected = last_check_rejected_;
  v.active = active_ ? &*active_ : nullptr;
  return v;
}

// ---------------------------------------------------------------- vehicle

VehicleEndpoint::VehicleEndpoint(const Scenario & scenario, SendFn send, vehicle::TrackerConfig tracker)
: scenario_(scenario), send_(std::move(send)), tracker_(scenario.vehicle, scenario.limits, tracker)
{
  state_.x = scenario.start_pose.x;
  state_.y = scenario.start_pose.y;
  state_.psi = scenario.start_pose.psi;
  phase_log_.push_back({0, phase_});
}

void VehicleEndpoint::send(protocol::Payload payload, std::int64_t now_ms)
{
  send_(outbox_.stamp(std::move(payload), now_ms));
}

bool VehicleEndpoint::step(VehicleEvent event, std::int64_t now_ms)
{
  protocol::Step<VehiclePhase> s;
  try {
    s = protocol::state_step_vehicle(phase_, event);
  } catch (const protocol::IllegalTransition & e) {
    ++illegal_;
    spdlog::warn("[{} ms] vehicle: {}", now_ms, e.what());
    return false;
  }
  const VehiclePhase from = phase_;
  if (s.next != phase_) {
    phase_ = s.next;
    phase_log_.push_back({now_ms, s.next});
    spdlog::debug("[{} ms] vehicle -> {}", now_ms, protocol::to_string(s.next));
  }
  if (from == VehiclePhase::AutomatedOperation && s.next == VehiclePhase::AwaitTrajectory) {
    monitor_.arm(now_ms);
  }
  if (!protocol::in_session(s.next) && protocol::in_session(from)) {
    monitor_.disarm();
    left_session_ = true;
  }
  for (const auto type : s.emit) {
    switch (type) {
      case MessageType::TeleopRequest: send(protocol::TeleopRequest{"operational design domain exit"}, now_ms); break;
      case MessageType::TrackingStarted: send(protocol::TrackingStarted{active_id_}, now_ms); break;
      case MessageType::PathEndReached: send(protocol::PathEndReached{active_id_}, now_ms); break;
      default: break;  // payloads with event context are sent by the caller
    }
  }
  return true;
}

void VehicleEndpoint::start_mrm(protocol::MrmCause cause, std::int64_t now_ms)
{
  const double previous_age =
    tracker_.latest_plan() ? ms_to_s(now_ms) - tracker_.latest_plan()->generated_at_time : 0.0;
  const auto & plan = tracker_.trigger_mrm(state_, ms_to_s(now_ms));
  MrmRecord r;
  r.cause = cause;
  r.trigger_ms = now_ms;
  r.trigger_s = tracker_.s_progress();
  r.trigger_v = state_.v;
  r.plan_generated_at_s = plan.generated_at_s;
  r.plan_generated_at_time = plan.generated_at_time;
  r.previous_plan_age = previous_age;
  r.clamped = plan.clamped;
  mrms_.push_back(r);
  send(protocol::MrmExecuted{cause, protocol::MrmStage::Triggered}, now_ms);
}

void VehicleEndpoint::handle_proposal(const protocol::TrajectoryProposal & p, std::int64_t now_ms)
{
  const VehiclePhase before = phase_;
  if (!step(VehicleEvent::RecvProposal, now_ms)) {
    return;
  }
  if (before == VehiclePhase::EmergencyStop) {
    send(protocol::TrajectoryChecked{p.trajectory.id, protocol::CheckStatus::Rejected, {"EmergencyStopActive"}}, now_ms);
    return;
  }
  const auto report = vehicle::check_trajectory(
    p.trajectory, scenario_.vehicle, scenario_.world(), scenario_.limits, Vec2{state_.x, state_.y});
  if (report.ok()) {
    checked_ = p.trajectory;
    step(VehicleEvent::CheckPassed, now_ms);
    send(protocol::TrajectoryChecked{p.trajectory.id, protocol::CheckStatus::Ok, {}}, now_ms);
  } else {
    checked_.reset();
    step(VehicleEvent::CheckFailed, now_ms);
    send(protocol::TrajectoryChecked{p.trajectory.id, protocol::CheckStatus::Rejected, report.reason_names()}, now_ms);
  }
}

void VehicleEndpoint::on_message(const protocol::Message & msg, std::int64_t now_ms)
{
  monitor_.on_arrival(now_ms);
  if (const auto * p = std::get_if<protocol::TrajectoryProposal>(&msg.payload)) {
    handle_proposal(*p, now_ms);
    return;
  }
  if (const auto * a = std::get_if<protocol::TrajectoryApprove>(&msg.payload)) {
    if (phase_ != VehiclePhase::AwaitApproval || !checked_ || checked_->id != a->id) {
      ++illegal_;
      spdlog::warn("[{} ms] vehicle: approval for unknown proposal {}", now_ms, a->id);
      return;
    }
    active_id_ = a->id;
    if (step(VehicleEvent::RecvApprove, now_ms)) {
      tracker_.start(*checked_);
    }
    return;
  }
  VehicleEvent event;
  if (!protocol::vehicle_event_for(msg, event)) {
    return;
  }
  const VehiclePhase before = phase_;
  if (!step(event, now_ms)) {
    return;
  }
  if (event == VehicleEvent::RecvEStop && before != VehiclePhase::EmergencyStop) {
    start_mrm(protocol::MrmCause::Operator, now_ms);
  }
}

void VehicleEndpoint::tick(std::int64_t now_ms)
{
  // Disengagement: request teleoperation until acknowledged.
  if (phase_ == VehiclePhase::AutomatedOperation && !left_session_ &&
      (!last_disengage_ms_ || now_ms - *last_disengage_ms_ >= kDisengageRepeatMs)) {
    last_disengage_ms_ = now_ms;
    step(VehicleEvent::Disengage, now_ms);
  }

  if (protocol::in_session(phase_) && monitor_.poll_loss_edge(now_ms)) {
    const VehiclePhase before = phase_;
    if (step(VehicleEvent::LinkLost, now_ms) && before != VehiclePhase::EmergencyStop) {
      start_mrm(protocol::MrmCause::NetworkLoss, now_ms);
    }
  }

  if (now_ms % 10 == 0) {
    const bool tracking = tracker_.mode() == vehicle::TrackerMode::Tracking;
    const bool in_mrm = tracker_.mode() == vehicle::TrackerMode::Mrm;
    const auto ev = tracker_.step(state_, ms_to_s(now_ms));
    if (in_mrm && !mrms_.empty() && !mrms_.back().activation_ms) {
      mrms_.back().activation_ms = now_ms;
    }
    if (tracking) max_cross_track_ = std::max(max_cross_track_, tracker_.cross_track());
    for (const auto & o : scenario_.obstacles) {
      if (polygons_intersect(vehicle::footprint(state_, scenario_.vehicle), o)) {
        ++footprint_hits_;
        break;
      }
    }
    if (ev.path_end && phase_ == VehiclePhase::TrajectoryTracking) {
      step(VehicleEvent::PathEnd, now_ms);
    }
    if (ev.diverged && phase_ == VehiclePhase::TrajectoryTracking) {
      spdlog::warn("[{} ms] vehicle: cross-track {:.2f} m, collision risk", now_ms, tracker_.cross_track());
      if (step(VehicleEvent::CollisionRisk, now_ms)) start_mrm(protocol::MrmCause::CollisionRisk, now_ms);
    }
    if (ev.mrm_complete && phase_ == VehiclePhase::EmergencyStop) {
      auto & r = mrms_.back();
      r.completed_ms = now_ms;
      r.stop_s = tracker_.s_progress();
      step(VehicleEvent::MrmComplete, now_ms);
      send(protocol::MrmExecuted{r.cause, protocol::MrmStage::Completed}, now_ms);
    }
  }

  if (now_ms % protocol::kHeartbeatPeriodMs == 0) {
    const std::uint64_t traj_id = tracker_.trajectory() ? tracker_.trajectory()->id : 0;
    send(protocol::VehicleStateReport{state_.x, state_.y, state_.psi, state_.v, state_.a, tracker_.s_progress(), traj_id},
         now_ms);
    send(protocol::Heartbeat{}, now_ms);
    record_.rows.push_back(vehicle::RunRow{ms_to_s(now_ms), state_.x, state_.y, state_.psi, state_.v, state_.a,
                                           tracker_.s_progress(), std::string(protocol::to_string(phase_)),
                                           phase_ == VehiclePhase::EmergencyStop});
  }
}

}  // namespace tg::session
