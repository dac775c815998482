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

#ifndef TG__PROTOCOL__MESSAGE_HPP_
#define TG__PROTOCOL__MESSAGE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tg/traj/types.hpp"

namespace tg::protocol
{
enum class MessageType {
  TeleopRequest,
  TakeoverAck,
  TrajectoryProposal,
  TrajectoryChecked,
  TrajectoryApprove,
  TrajectoryReject,
  TrackingStarted,
  VehicleState,
  PathEndReached,
  EmergencyStop,
  MrmExecuted,
  Heartbeat,
  SessionEnd,
};

std::string_view to_string(MessageType type);
std::optional<MessageType> message_type_from_string(std::string_view name);

enum class CheckStatus { Ok, Rejected };
enum class MrmCause { Operator, NetworkLoss, CollisionRisk };
enum class MrmStage { Triggered, Completed };

std::string_view to_string(MrmCause cause);
std::string_view to_string(MrmStage stage);

struct TeleopRequest
{
  std::string reason;
  bool operator==(const TeleopRequest &) const = default;
};

struct TakeoverAck
{
  bool operator==(const TakeoverAck &) const = default;
};

struct TrajectoryProposal
{
  std::vector<traj::Waypoint> waypoints;
  traj::Trajectory trajectory;
  bool operator==(const TrajectoryProposal &) const = default;
};

struct TrajectoryChecked
{
  std::uint64_t id{0};
  CheckStatus status{CheckStatus::Ok};
  std::vector<std::string> reasons;
  bool operator==(const TrajectoryChecked &) const = default;
};

struct TrajectoryApprove
{
  std::uint64_t id{0};
  bool operator==(const TrajectoryApprove &) const = default;
};

struct TrajectoryReject
{
  std::uint64_t id{0};
  bool operator==(const TrajectoryReject &) const = default;
};

struct TrackingStarted
{
  std::uint64_t id{0};
  bool operator==(const TrackingStarted &) const = default;
};

struct VehicleStateReport
{
  double x{0.0};
  double y{0.0};
  double psi{0.0};
  double v{0.0};
  double a{0.0};
  double s_progress{0.0};
  std::uint64_t traj_id{0};
  bool operator==(const VehicleStateReport &) const = default;
};

struct PathEndReached
{
  std::uint64_t id{0};
  bool operator==(const PathEndReached &) const = default;
};

struct EmergencyStop
{
  bool operator==(const EmergencyStop &) const = default;
};

struct MrmExecuted
{
  MrmCause cause{MrmCause::Operator};
  MrmStage stage{MrmStage::Triggered};
  bool operator==(const MrmExecuted &) const = default;
};

struct Heartbeat
{
  bool operator==(const Heartbeat &) const = default;
};

struct SessionEnd
{
  bool goal_reached{true};
  bool operator==(const SessionEnd &) const = default;
};

/// Alternative order matches MessageType.
using Payload = std::variant<
  TeleopRequest, TakeoverAck, TrajectoryProposal, TrajectoryChecked, TrajectoryApprove,
  TrajectoryReject, TrackingStarted, VehicleStateReport, PathEndReached, EmergencyStop,
  MrmExecuted, Heartbeat, SessionEnd>;

struct Message
{
  std::uint64_t seq{0};
  std::int64_t sent_at_ms{0};
  Payload payload;

  MessageType type() const { return static_cast<MessageType>(payload.index()); }
  bool operator==(const Message &) const = default;
};

/// Stamps outgoing payloads with a strictly increasing seq and a
/// non-decreasing send time for one sender.
class Outbox
{
public:
  Message stamp(Payload payload, std::int64_t now_ms);
  std::uint64_t last_seq() const { return next_seq_ - 1; }

private:
  std::uint64_t next_seq_{1};
  std::int64_t last_sent_ms_{0};
};

}  // namespace tg::protocol

#endif  // TG__PROTOCOL__MESSAGE_HPP_
