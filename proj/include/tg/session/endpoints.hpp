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

#ifndef TG__SESSION__ENDPOINTS_HPP_
#define TG__SESSION__ENDPOINTS_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tg/protocol/heartbeat.hpp"
#include "tg/protocol/message.hpp"
#include "tg/protocol/state_machine.hpp"
#include "tg/session/scenario.hpp"
#include "tg/session/ui_command.hpp"
#include "tg/traj/types.hpp"
#include "tg/vehicle/run_record.hpp"
#include "tg/vehicle/tracker.hpp"

namespace tg::session
{
using SendFn = std::function<void(const protocol::Message &)>;

template <class Phase>
struct PhaseChange
{
  std::int64_t t_ms{0};
  Phase phase{};
  bool operator==(const PhaseChange &) const = default;
};

struct CommandLogEntry
{
  std::int64_t t_ms{0};
  UiCommand command;
  bool accepted{false};
  std::string note;
};

/// What an operator (human, script or UI) can see when deciding.
struct OperatorView
{
  std::int64_t now_ms{0};
  protocol::OperatorPhase phase{protocol::OperatorPhase::Idle};
  protocol::OperatorPhase previous_phase{protocol::OperatorPhase::Idle};
  std::int64_t phase_since_ms{0};
  std::optional<protocol::VehicleStateReport> vehicle;
  bool vehicle_in_goal{false};
  std::size_t draft_size{0};
  bool tracking_started{false};
  std::optional<std::int64_t> mrm_completed_ms;
  bool link_lost{false};
  bool last_check_rejected{false};
  /// Last trajectory the vehicle accepted for tracking.
  const traj::Trajectory * active{nullptr};
};

/// Operator end: phase machine, draft waypoints, proposal building, heartbeat.
class OperatorEndpoint
{
public:
  OperatorEndpoint(const Scenario & scenario, SendFn send);

  void on_message(const protocol::Message & msg, std::int64_t now_ms);
  /// Heartbeat on 20 ms boundaries and link supervision.
  void tick(std::int64_t now_ms);
  /// Applies one operator command; rejected commands leave all state unchanged.
  bool apply(const UiCommand & cmd, std::int64_t now_ms);

  OperatorView view(std::int64_t now_ms) const;
  protocol::OperatorPhase phase() const { return phase_; }
  const std::vector<PhaseChange<protocol::OperatorPhase>> & phase_log() const { return phase_log_; }
  const std::vector<CommandLogEntry> & command_log() const { return commands_; }
  const std::vector<traj::Waypoint> & draft() const { return draft_; }
  const std::optional<traj::Trajectory> & proposal() const { return proposal_; }
  const std::optional<traj::Trajectory> & active() const { return active_; }
  std::optional<bool> session_end_goal() const { return session_end_goal_; }
  bool link_lost() const { return link_lost_; }
  const std::vector<std::string> & last_check_reasons() const { return last_reasons_; }
  std::size_t rejected_checks() const { return rejected_checks_; }
  bool in_goal() const;

private:
  bool step(protocol::OperatorEvent event, std::int64_t now_ms);
  void send(protocol::Payload payload, std::int64_t now_ms);
  void set_phase(protocol::OperatorPhase next, std::int64_t now_ms);

  const Scenario & scenario_;
  SendFn send_;
  protocol::Outbox outbox_;
  protocol::HeartbeatMonitor monitor_;
  protocol::OperatorPhase phase_{protocol::OperatorPhase::Idle};
  protocol::OperatorPhase previous_phase_{protocol::OperatorPhase::Idle};
  std::int64_t phase_since_{0};
  std::vector<PhaseChange<protocol::OperatorPhase>> phase_log_;
  std::vector<CommandLogEntry> commands_;
  std::vector<traj::Waypoint> draft_;
  std::optional<traj::Trajectory> proposal_;
  std::optional<traj::Trajectory> active_;
  std::optional<protocol::VehicleStateReport> vehicle_;
  std::uint64_t next_traj_id_{1};
  bool tracking_started_{false};
  std::optional<std::int64_t> mrm_completed_ms_;
  bool link_lost_{false};
  bool last_check_rejected_{false};
  std::vector<std::string> last_reasons_;
  std::size_t rejected_checks_{0};
  std::optional<bool> session_end_goal_;
};

struct MrmRecord
{
  protocol::MrmCause cause{protocol::MrmCause::Operator};
  std::int64_t trigger_ms{0};
  std::optional<std::int64_t> activation_ms;
  std::optional<std::int64_t> completed_ms;
  double trigger_s{0.0};
  double trigger_v{0.0};
  double stop_s{0.0};
  double plan_generated_at_s{0.0};
  double plan_generated_at_time{0.0};
  /// Age of the plan that was replaced at trigger time, seconds.
  double previous_plan_age{0.0};
  bool clamped{false};
};

/// Vehicle end: phase machine, onboard check, tracker, MRM, telemetry.
class VehicleEndpoint
{
public:
  static constexpr std::int64_t kDisengageRepeatMs = 1000;

  VehicleEndpoint(const Scenario & scenario, SendFn send, vehicle::TrackerConfig tracker = {});

  void on_message(const protocol::Message & msg, std::int64_t now_ms);
  /// Loss supervision every ms, control every 10 ms, telemetry and heartbeat every 20 ms.
  void tick(std::int64_t now_ms);

  protocol::VehiclePhase phase() const { return phase_; }
  const vehicle::VehicleState & state() const { return state_; }
  const vehicle::Tracker & tracker() const { return tracker_; }
  const std::vector<PhaseChange<protocol::VehiclePhase>> & phase_log() const { return phase_log_; }
  const std::vector<MrmRecord> & mrm_log() const { return mrms_; }
  const vehicle::RunRecord & record() const { return record_; }
  double max_cross_track() const { return max_cross_track_; }
  std::size_t footprint_hits() const { return footprint_hits_; }
  std::size_t illegal_events() const { return illegal_; }
  bool left_session() const { return left_session_; }

private:
  bool step(protocol::VehicleEvent event, std::int64_t now_ms);
  void send(protocol::Payload payload, std::int64_t now_ms);
  void start_mrm(protocol::MrmCause cause, std::int64_t now_ms);
  void handle_proposal(const protocol::TrajectoryProposal & p, std::int64_t now_ms);

  const Scenario & scenario_;
  SendFn send_;
  protocol::Outbox outbox_;
  protocol::HeartbeatMonitor monitor_;
  protocol::VehiclePhase phase_{protocol::VehiclePhase::AutomatedOperation};
  vehicle::Tracker tracker_;
  vehicle::VehicleState state_;
  std::optional<traj::Trajectory> checked_;
  std::uint64_t active_id_{0};
  std::vector<PhaseChange<protocol::VehiclePhase>> phase_log_;
  std::vector<MrmRecord> mrms_;
  vehicle::RunRecord record_;
  std::optional<std::int64_t> last_disengage_ms_;
  bool left_session_{false};
  double max_cross_track_{0.0};
  std::size_t footprint_hits_{0};
  std::size_t illegal_{0};
};

}  // namespace tg::session

#endif  // TG__SESSION__ENDPOINTS_HPP_
