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

#include "tg/session/ui_command.hpp"

#include <array>
#include <cmath>

#include "tg/protocol/codec.hpp"

namespace tg::session
{
namespace
{
constexpr std::array<std::string_view, 10> kNames{
  "takeover", "add_waypoint", "undo_waypoint", "clear",       "submit_proposal",
  "approve",  "reject",       "estop",         "acknowledge", "end_session"};
}  // namespace

std::string_view to_string(UiCommandKind kind) { return kNames.at(static_cast<std::size_t>(kind)); }

std::optional<UiCommandKind> ui_command_from_string(std::string_view name)
{
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return static_cast<UiCommandKind>(i);
  }
  return std::nullopt;
}

bool command_allowed(protocol::OperatorPhase phase, UiCommandKind kind)
{
  using protocol::OperatorPhase;
  switch (kind) {
    case UiCommandKind::Takeover: return phase == OperatorPhase::Takeover;
    case UiCommandKind::AddWaypoint:
    case UiCommandKind::UndoWaypoint:
    case UiCommandKind::Clear:
    case UiCommandKind::Submit: return phase == OperatorPhase::TrajectoryCreation;
    case UiCommandKind::Approve:
    case UiCommandKind::Reject: return phase == OperatorPhase::TrajectoryApproval;
    case UiCommandKind::EStop: return phase == OperatorPhase::Monitoring;
    case UiCommandKind::Acknowledge: return phase == OperatorPhase::EmergencyStopped;
    case UiCommandKind::EndSession: return phase == OperatorPhase::TrajectoryCreation;
  }
  return false;
}

nlohmann::json ui_command_frame(const UiCommand & cmd, std::uint64_t seq, std::int64_t sent_at_ms)
{
  nlohmann::json payload{{"command", std::string(to_string(cmd.kind))}};
  if (cmd.kind == UiCommandKind::AddWaypoint) {
    payload["x"] = cmd.x;
    payload["y"] = cmd.y;
  }
  return {{"type", "ui_command"}, {"seq", seq}, {"sent_at_ms", sent_at_ms}, {"payload", payload}};
}

UiCommand parse_ui_command_frame(std::string_view text)
{
  using protocol::MalformedMessage;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception & e) {
    throw MalformedMessage(std::string("ui frame: ") + e.what());
  }
  if (!j.is_object() || j.size() != 4 || !j.contains("type") || !j.contains("seq") || !j.contains("sent_at_ms") ||
      !j.contains("payload")) {
    throw MalformedMessage("ui frame: expected keys type, seq, sent_at_ms, payload");
  }
  if (j.at("type") != "ui_command") throw MalformedMessage("ui frame: type must be ui_command");
  if (!j.at("seq").is_number_unsigned()) throw MalformedMessage("ui frame: seq must be a non-negative integer");
  if (!j.at("sent_at_ms").is_number_integer()) throw MalformedMessage("ui frame: sent_at_ms must be an integer");
  const auto & p = j.at("payload");
  if (!p.is_object() || !p.contains("command") || !p.at("command").is_string()) {
    throw MalformedMessage("ui frame: payload.command missing");
  }
  const auto kind = ui_command_from_string(p.at("command").get<std::string>());
  if (!kind) throw MalformedMessage("ui frame: unknown command");
  UiCommand cmd{*kind, 0.0, 0.0};
  if (*kind == UiCommandKind::AddWaypoint) {
    if (p.size() != 3 || !p.contains("x") || !p.contains("y") || !p.at("x").is_number() || !p.at("y").is_number()) {
      throw MalformedMessage("ui frame: add_waypoint needs numeric x and y");
    }
    cmd.x = p.at("x").get<double>();
    cmd.y = p.at("y").get<double>();
    if (!std::isfinite(cmd.x) || !std::isfinite(cmd.y)) throw MalformedMessage("ui frame: non-finite waypoint");
  } else if (p.size() != 1) {
    throw MalformedMessage("ui frame: unexpected payload keys");
  }
  return cmd;
}

}  // namespace tg::session
