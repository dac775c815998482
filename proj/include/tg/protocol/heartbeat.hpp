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

#ifndef TG__PROTOCOL__HEARTBEAT_HPP_
#define TG__PROTOCOL__HEARTBEAT_HPP_

#include <cstdint>
#include <optional>

namespace tg::protocol
{
inline constexpr std::int64_t kHeartbeatPeriodMs = 20;
inline constexpr std::int64_t kLossThresholdMs = 80;

enum class LinkStatus { Alive, Lost };

/// Receiver-side liveness tracking. Any arriving message counts as a sign of life.
class HeartbeatMonitor
{
public:
  explicit HeartbeatMonitor(std::int64_t threshold_ms = kLossThresholdMs);

  /// Starts monitoring as if a message had just arrived at `now_ms`.
  void arm(std::int64_t now_ms);
  void disarm();
  bool armed() const { return last_heard_.has_value(); }

  void on_arrival(std::int64_t at_ms);

  /// Lost iff now - last_heard > threshold. `now_ms` must be non-decreasing.
  LinkStatus status(std::int64_t now_ms) const;

  /// True exactly once per loss episode: on the first poll that sees Lost.
  /// The next arrival re-arms the edge.
  bool poll_loss_edge(std::int64_t now_ms);

  std::optional<std::int64_t> last_heard() const { return last_heard_; }
  std::int64_t threshold() const { return threshold_; }

private:
  std::int64_t threshold_;
  std::optional<std::int64_t> last_heard_;
  bool reported_{false};
};

}  // namespace tg::protocol

#endif  // TG__PROTOCOL__HEARTBEAT_HPP_
