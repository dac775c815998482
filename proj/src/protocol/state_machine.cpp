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

#include "tg/protocol/state_machine.hpp"

#include <string>

namespace tg::protocol
{
namespace
{
using MT = MessageType;
using OP = OperatorPhase;
using OE = OperatorEvent;
using VP = VehiclePhase;
using VE = VehicleEvent;

[[noreturn]] void illegal(std::string_view phase, std::string_view event)
{
  throw IllegalTransition(
    "event '" + std::string(event) + "' is not legal in phase '" + std::string(phase) + "'");
}

// Phases from which the operator may hit the emergency stop.
bool operator_can_estop(OP p)
{
  return p == OP::TrajectoryCreation || p == OP::AwaitCheck || p == OP::TrajectoryApproval ||
         p == OP::Monitoring;
}

}  // namespace

std::string_view to_string(OperatorPhase phase)
{
  switch (phase) {
    case OP::Idle: return "Idle";
    case OP::Takeover: return "Takeover";
    case OP::TrajectoryCreation: return "TrajectoryCreation";
    case OP::AwaitCheck: return "AwaitCheck";
    case OP::TrajectoryApproval: return "TrajectoryApproval";
    case OP::Monitoring: return "Monitoring";
    case OP::EmergencyStopped: return "EmergencyStopped";
    case OP::Handover: return "Handover";
  }
  return "?";
}

std::string_view to_string(VehiclePhase phase)
{
  switch (phase) {
    case VP::AutomatedOperation: return "AutomatedOperation";
    case VP::AwaitTrajectory: return "AwaitTrajectory";
    case VP::TrajectoryCheck: return "TrajectoryCheck";
    case VP::AwaitApproval: return "AwaitApproval";
    case VP::TrajectoryTracking: return "TrajectoryTracking";
    case VP::EmergencyStop: return "EmergencyStop";
    case VP::Handover: return "Handover";
  }
  return "?";
}

std::string_view to_string(OperatorEvent event)
{
  switch (event) {
    case OE::RecvTeleopRequest: return "recv_teleop_request";
    case OE::RecvCheckOk: return "recv_check_ok";
    case OE::RecvCheckRejected: return "recv_check_rejected";
    case OE::RecvTrackingStarted: return "recv_tracking_started";
    case OE::RecvPathEnd: return "recv_path_end";
    case OE::RecvMrmTriggered: return "recv_mrm_triggered";
    case OE::RecvMrmCompleted: return "recv_mrm_completed";
    case OE::CmdTakeover: return "takeover";
    case OE::CmdSubmit: return "submit";
    case OE::CmdApprove: return "approve";
    case OE::CmdReject: return "reject";
    case OE::CmdEStop: return "estop";
    case OE::CmdAcknowledge: return "acknowledge";
    case OE::CmdEndSession: return "end_session";
  }
  return "?";
}

std::string_view to_string(VehicleEvent event)
{
  switch (event) {
    case VE::Disengage: return "disengage";
    case VE::RecvTakeoverAck: return "recv_takeover_ack";
    case VE::RecvProposal: return "recv_proposal";
    case VE::CheckPassed: return "check_passed";
    case VE::CheckFailed: return "check_failed";
    case VE::RecvApprove: return "recv_approve";
    case VE::RecvReject: return "recv_reject";
    case VE::PathEnd: return "path_end";
    case VE::RecvEStop: return "recv_estop";
    case VE::LinkLost: return "link_lost";
    case VE::CollisionRisk: return "collision_risk";
    case VE::MrmComplete: return "mrm_complete";
    case VE::RecvSessionEndGoal: return "recv_session_end_goal";
    case VE::RecvSessionEndAbort: return "recv_session_end_abort";
    case VE::ResumeMission: return "resume_mission";
  }
  return "?";
}

bool in_session(OperatorPhase p) { return p != OP::Idle && p != OP::Handover; }

bool in_session(VehiclePhase p) { return p != VP::AutomatedOperation && p != VP::Handover; }

Step<OperatorPhase> state_step_operator(OperatorPhase phase, OperatorEvent event)
{
  switch (event) {
    case OE::RecvTeleopRequest:
      if (phase == OP::Idle || phase == OP::Handover) return {OP::Takeover, {}};
      // The vehicle repeats its request until the acknowledgement arrives.
      if (phase == OP::TrajectoryCreation) return {OP::TrajectoryCreation, {MT::TakeoverAck}};
      break;
    case OE::CmdTakeover:
      if (phase == OP::Takeover) return {OP::TrajectoryCreation, {MT::TakeoverAck}};
      break;
    case OE::CmdSubmit:
      if (phase == OP::TrajectoryCreation) return {OP::AwaitCheck, {MT::TrajectoryProposal}};
      break;
    case OE::RecvCheckOk:
      if (phase == OP::AwaitCheck) return {OP::TrajectoryApproval, {}};
      break;
    case OE::RecvCheckRejected:
      if (phase == OP::AwaitCheck) return {OP::TrajectoryCreation, {}};
      break;
    case OE::CmdApprove:
      if (phase == OP::TrajectoryApproval) return {OP::Monitoring, {MT::TrajectoryApprove}};
      break;
    case OE::CmdReject:
      if (phase == OP::TrajectoryApproval) return {OP::TrajectoryCreation, {MT::TrajectoryReject}};
      break;
    case OE::RecvTrackingStarted:
      if (phase == OP::Monitoring) return {OP::Monitoring, {}};
      break;
    case OE::RecvPathEnd:
      if (phase == OP::Monitoring) return {OP::TrajectoryCreation, {}};
      break;
    case OE::CmdEStop:
      if (operator_can_estop(phase) || phase == OP::EmergencyStopped) {
        return {OP::EmergencyStopped, {MT::EmergencyStop}};
      }
      break;
    case OE::RecvMrmTriggered:
    case OE::RecvMrmCompleted:
      if (operator_can_estop(phase) || phase == OP::EmergencyStopped) {
        return {OP::EmergencyStopped, {}};
      }
      break;
    case OE::CmdAcknowledge:
      if (phase == OP::EmergencyStopped) return {OP::TrajectoryCreation, {}};
      break;
    case OE::CmdEndSession:
      // Repeating it from Handover re-sends a possibly lost session_end.
      if (phase == OP::TrajectoryCreation || phase == OP::Handover) {
        return {OP::Handover, {MT::SessionEnd}};
      }
      break;
  }
  illegal(to_string(phase), to_string(event));
}

Step<VehiclePhase> state_step_vehicle(VehiclePhase phase, VehicleEvent event)
{
  const bool session = in_session(phase);
  switch (event) {
    case VE::Disengage:
      if (phase == VP::AutomatedOperation) return {VP::AutomatedOperation, {MT::TeleopRequest}};
      break;
    case VE::RecvTakeoverAck:
      if (phase == VP::AutomatedOperation) return {VP::AwaitTrajectory, {}};
      break;
    case VE::RecvProposal:
      if (phase == VP::AwaitTrajectory) return {VP::TrajectoryCheck, {}};
      // A proposal during an MRM is answered so the operator never waits forever.
      if (phase == VP::EmergencyStop) return {VP::EmergencyStop, {MT::TrajectoryChecked}};
      break;
    case VE::CheckPassed:
      if (phase == VP::TrajectoryCheck) return {VP::AwaitApproval, {MT::TrajectoryChecked}};
      break;
    case VE::CheckFailed:
      if (phase == VP::TrajectoryCheck) return {VP::AwaitTrajectory, {MT::TrajectoryChecked}};
      break;
    case VE::RecvApprove:
      if (phase == VP::AwaitApproval) return {VP::TrajectoryTracking, {MT::TrackingStarted}};
      break;
    case VE::RecvReject:
      if (phase == VP::AwaitApproval) return {VP::AwaitTrajectory, {}};
      break;
    case VE::PathEnd:
      if (phase == VP::TrajectoryTracking) return {VP::AwaitTrajectory, {MT::PathEndReached}};
      break;
    case VE::RecvEStop:
    case VE::LinkLost:
      if (phase == VP::EmergencyStop) return {VP::EmergencyStop, {}};
      if (session) return {VP::EmergencyStop, {MT::MrmExecuted}};
      break;
    case VE::CollisionRisk:
      if (phase == VP::TrajectoryTracking) return {VP::EmergencyStop, {MT::MrmExecuted}};
      break;
    case VE::MrmComplete:
      if (phase == VP::EmergencyStop) return {VP::AwaitTrajectory, {MT::MrmExecuted}};
      break;
    case VE::RecvSessionEndGoal:
      if (phase == VP::AwaitTrajectory) return {VP::AutomatedOperation, {}};
      break;
    case VE::RecvSessionEndAbort:
      if (phase == VP::AwaitTrajectory) return {VP::Handover, {}};
      break;
    case VE::ResumeMission:
      if (phase == VP::Handover) return {VP::AutomatedOperation, {}};
      break;
  }
  illegal(to_string(phase), to_string(event));
}

bool operator_event_for(const Message & msg, OperatorEvent & out)
{
  switch (msg.type()) {
    case MT::TeleopRequest: out = OE::RecvTeleopRequest; return true;
    case MT::TrajectoryChecked:
      out = std::get<TrajectoryChecked>(msg.payload).status == CheckStatus::Ok ? OE::RecvCheckOk
                                                                                : OE::RecvCheckRejected;
      return true;
    case MT::TrackingStarted: out = OE::RecvTrackingStarted; return true;
    case MT::PathEndReached: out = OE::RecvPathEnd; return true;
    case MT::MrmExecuted:
      out = std::get<MrmExecuted>(msg.payload).stage == MrmStage::Triggered ? OE::RecvMrmTriggered
                                                                             : OE::RecvMrmCompleted;
      return true;
    default: return false;
  }
}

bool vehicle_event_for(const Message & msg, VehicleEvent & out)
{
  switch (msg.type()) {
    case MT::TakeoverAck: out = VE::RecvTakeoverAck; return true;
    case MT::TrajectoryProposal: out = VE::RecvProposal; return true;
    case MT::TrajectoryApprove: out = VE::RecvApprove; return true;
    case MT::TrajectoryReject: out = VE::RecvReject; return true;
    case MT::EmergencyStop: out = VE::RecvEStop; return true;
    case MT::SessionEnd:
      out = std::get<SessionEnd>(msg.payload).goal_reached ? VE::RecvSessionEndGoal
                                                           : VE::RecvSessionEndAbort;
      return true;
    default: return false;
  }
}

}  // namespace tg::protocol
