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

#include "tg/protocol/message.hpp"

#include <algorithm>
#include <array>

namespace tg::protocol
{
namespace
{
constexpr std::array<std::string_view, 13> kTypeNames{
  "teleop_request",    "takeover_ack",     "trajectory_proposal", "trajectory_checked",
  "trajectory_approve", "trajectory_reject", "tracking_started",   "vehicle_state",
  "path_end_reached",  "emergency_stop",   "mrm_executed",        "heartbeat",
  "session_end"};
}  // namespace

std::string_view to_string(MessageType type) { return kTypeNames.at(static_cast<size_t>(type)); }

std::optional<MessageType> message_type_from_string(std::string_view name)
{
  const auto it = std::find(kTypeNames.begin(), kTypeNames.end(), name);
  if (it == kTypeNames.end()) {
    return std::nullopt;
  }
  return static_cast<MessageType>(std::distance(kTypeNames.begin(), it));
}

std::string_view to_string(MrmCause cause)
{
  switch (cause) {
    case MrmCause::Operator: return "operator";
    case MrmCause::NetworkLoss: return "network_loss";
    case MrmCause::CollisionRisk: return "collision_risk";
  }
  return "unknown";
}

std::string_view to_string(MrmStage stage)
{
  return stage == MrmStage::Triggered ? "triggered" : "completed";
}

Message Outbox::stamp(Payload payload, std::int64_t now_ms)
{
  last_sent_ms_ = std::max(last_sent_ms_, now_ms);
  return Message{next_seq_++, last_sent_ms_, std::move(payload)};
}

}  // namespace tg::protocol
