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

#ifndef TG__SESSION__UI_COMMAND_HPP_
#define TG__SESSION__UI_COMMAND_HPP_

#include <cstdint>
#include <optional>
#include <string_view>

#include <json.hpp>

#include "tg/protocol/state_machine.hpp"

namespace tg::session
{
enum class UiCommandKind {
  Takeover,
  AddWaypoint,
  UndoWaypoint,
  Clear,
  Submit,
  Approve,
  Reject,
  EStop,
  Acknowledge,
  EndSession,
};

struct UiCommand
{
  UiCommandKind kind{UiCommandKind::Takeover};
  double x{0.0};
  double y{0.0};
  bool operator==(const UiCommand &) const = default;
};

std::string_view to_string(UiCommandKind kind);
std::optional<UiCommandKind> ui_command_from_string(std::string_view name);

/// Phase gate shared by the UI and the operator endpoint.
bool command_allowed(protocol::OperatorPhase phase, UiCommandKind kind);

/// `{"type":"ui_command","seq":..,"sent_at_ms":..,"payload":{"command":..[,"x","y"]}}`,
/// the protocol envelope with one extra message type.
nlohmann::json ui_command_frame(const UiCommand & cmd, std::uint64_t seq, std::int64_t sent_at_ms);

/// Throws protocol::MalformedMessage on anything but a well-formed ui_command frame.
UiCommand parse_ui_command_frame(std::string_view text);

}  // namespace tg::session

#endif  // TG__SESSION__UI_COMMAND_HPP_
