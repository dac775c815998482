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

#ifndef TG__SESSION__BRIDGE_HPP_
#define TG__SESSION__BRIDGE_HPP_

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>

#include <json.hpp>

#include "tg/session/operators.hpp"
#include "tg/session/session.hpp"

namespace tg::session
{
class BindError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Scene streamed to the UI: geometry, vehicle, overlays, phase, alarms and
/// the commands the UI may enable. Self-contained so a reconnect needs no history.
nlohmann::json scene_state(const Session & session, bool ui_link_lost = false);

/// `{"type":"error","message":...}`
nlohmann::json error_frame(const std::string & message);

/// Parses one client text frame into the command queue. Returns an error
/// frame for malformed input; the session never sees it.
std::optional<nlohmann::json> handle_client_frame(std::string_view text, QueueOperator & queue);

struct BridgeOptions
{
  std::string address{"127.0.0.1"};
  /// Zero picks an ephemeral port.
  std::uint16_t port{8765};
  /// Simulated ms per wall ms.
  double realtime_factor{1.0};
  SessionOptions session;
};

/// WebSocket server on `/ws` driving one session from UI commands.
class UiServer
{
public:
  UiServer(const Scenario & scenario, BridgeOptions options);
  ~UiServer();
  UiServer(const UiServer &) = delete;
  UiServer & operator=(const UiServer &) = delete;

  /// Binds and starts the network and session threads. Throws BindError.
  void start();
  void stop();
  /// Blocks until the session ends or stop() is called.
  void wait();

  std::uint16_t port() const;
  bool session_ended() const { return ended_.load(); }
  /// True after the last UI client disconnected.
  bool ui_link_lost() const { return ui_link_lost_.load(); }
  SessionRecord snapshot() const;

  struct Impl;

private:
  std::unique_ptr<Impl> impl_;
  std::atomic<bool> ended_{false};
  std::atomic<bool> ui_link_lost_{false};
};

}  // namespace tg::session

#endif  // TG__SESSION__BRIDGE_HPP_
