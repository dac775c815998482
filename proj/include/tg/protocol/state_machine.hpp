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

#ifndef TG__PROTOCOL__STATE_MACHINE_HPP_
#define TG__PROTOCOL__STATE_MACHINE_HPP_

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tg/protocol/message.hpp"

namespace tg::protocol
{
enum class OperatorPhase {
  Idle,
  Takeover,
  TrajectoryCreation,
  AwaitCheck,
  TrajectoryApproval,
  Monitoring,
  EmergencyStopped,
  Handover,
};

enum class VehiclePhase {
  AutomatedOperation,
  AwaitTrajectory,
  TrajectoryCheck,
  AwaitApproval,
  TrajectoryTracking,
  EmergencyStop,
  Handover,
};

/// Operator-end events: received messages (Recv*) and operator commands (Cmd*).
enum class OperatorEvent {
  RecvTeleopRequest,
  RecvCheckOk,
  RecvCheckRejected,
  RecvTrackingStarted,
  RecvPathEnd,
  RecvMrmTriggered,
  RecvMrmCompleted,
  CmdTakeover,
  CmdSubmit,
  CmdApprove,
  CmdReject,
  CmdEStop,
  CmdAcknowledge,
  CmdEndSession,
};

/// Vehicle-end events: received messages (Recv*) and onboard conditions.
enum class VehicleEvent {
  Disengage,
  RecvTakeoverAck,
  RecvProposal,
  CheckPassed,
  CheckFailed,
  RecvApprove,
  RecvReject,
  PathEnd,
  RecvEStop,
  LinkLost,
  CollisionRisk,
  MrmComplete,
  RecvSessionEndGoal,
  RecvSessionEndAbort,
  ResumeMission,
};

inline constexpr std::array kAllOperatorPhases{
  OperatorPhase::Idle,       OperatorPhase::Takeover,         OperatorPhase::TrajectoryCreation,
  OperatorPhase::AwaitCheck, OperatorPhase::TrajectoryApproval, OperatorPhase::Monitoring,
  OperatorPhase::EmergencyStopped, OperatorPhase::Handover};

inline constexpr std::array kAllVehiclePhases{
  VehiclePhase::AutomatedOperation, VehiclePhase::AwaitTrajectory, VehiclePhase::TrajectoryCheck,
  VehiclePhase::AwaitApproval,      VehiclePhase::TrajectoryTracking, VehiclePhase::EmergencyStop,
  VehiclePhase::Handover};

inline constexpr std::array kAllOperatorEvents{
  OperatorEvent::RecvTeleopRequest, OperatorEvent::RecvCheckOk,      OperatorEvent::RecvCheckRejected,
  OperatorEvent::RecvTrackingStarted, OperatorEvent::RecvPathEnd,    OperatorEvent::RecvMrmTriggered,
  OperatorEvent::RecvMrmCompleted,  OperatorEvent::CmdTakeover,      OperatorEvent::CmdSubmit,
  OperatorEvent::CmdApprove,        OperatorEvent::CmdReject,        OperatorEvent::CmdEStop,
  OperatorEvent::CmdAcknowledge,    OperatorEvent::CmdEndSession};

inline constexpr std::array kAllVehicleEvents{
  VehicleEvent::Disengage,    VehicleEvent::RecvTakeoverAck,    VehicleEvent::RecvProposal,
  VehicleEvent::CheckPassed,  VehicleEvent::CheckFailed,        VehicleEvent::RecvApprove,
  VehicleEvent::RecvReject,   VehicleEvent::PathEnd,            VehicleEvent::RecvEStop,
  VehicleEvent::LinkLost,     VehicleEvent::CollisionRisk,      VehicleEvent::MrmComplete,
  VehicleEvent::RecvSessionEndGoal, VehicleEvent::RecvSessionEndAbort, VehicleEvent::ResumeMission};

std::string_view to_string(OperatorPhase phase);
std::string_view to_string(VehiclePhase phase);
std::string_view to_string(OperatorEvent event);
std::string_view to_string(VehicleEvent event);

class IllegalTransition : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

template <class Phase>
struct Step
{
  Phase next;
  /// Message types to send, in order. The endpoint fills in payload details
  /// (trajectory, check reasons, MRM cause) from the event context.
  std::vector<MessageType> emit;
};

/// Throws IllegalTransition if `event` is not legal in `phase`.
Step<OperatorPhase> state_step_operator(OperatorPhase phase, OperatorEvent event);
Step<VehiclePhase> state_step_vehicle(VehiclePhase phase, VehicleEvent event);

/// Maps a received message to its event. Returns false for messages that
/// carry no transition (heartbeat, vehicle_state, and messages for the other end).
bool operator_event_for(const Message & msg, OperatorEvent & out);
bool vehicle_event_for(const Message & msg, VehicleEvent & out);

/// Phases between takeover and handover on each end.
bool in_session(OperatorPhase phase);
bool in_session(VehiclePhase phase);

}  // namespace tg::protocol

#endif  // TG__PROTOCOL__STATE_MACHINE_HPP_
