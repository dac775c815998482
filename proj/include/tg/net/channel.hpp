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

#ifndef TG__NET__CHANNEL_HPP_
#define TG__NET__CHANNEL_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "tg/protocol/message.hpp"

namespace tg::net
{
/// Half-open interval [start_ms, end_ms) during which nothing is delivered.
struct BlackoutWindow
{
  double start_ms{0.0};
  double end_ms{0.0};
  bool operator==(const BlackoutWindow &) const = default;
};

struct ChannelConfig
{
  double base_delay_ms{30.0};
  double jitter_ms{0.0};
  double loss_prob{0.0};
  std::vector<BlackoutWindow> blackout_windows;
  std::uint64_t seed{7};
  bool operator==(const ChannelConfig &) const = default;
};

/// Throws std::invalid_argument on a negative delay, jitter >= base delay
/// (unless zero), loss outside [0, 1), or unsorted/overlapping/empty windows.
void validate(const ChannelConfig & config);

enum class Direction { ToVehicle, ToOperator };

enum class DropReason { None, RandomLoss, Blackout };

struct SendResult
{
  DropReason dropped{DropReason::None};
  double deliver_at_ms{0.0};
  std::uint64_t send_index{0};
};

struct Delivery
{
  Direction direction{Direction::ToVehicle};
  double sent_at_ms{0.0};
  double deliver_at_ms{0.0};
  std::uint64_t send_index{0};
  protocol::Message message;
};

/// Simulated bidirectional link: delay, uniform jitter, random loss and
/// blackout windows. Ordered per direction: a message is never delivered
/// before an earlier message sent in the same direction.
class Channel
{
public:
  explicit Channel(ChannelConfig config);

  /// `at_ms` must not be earlier than the current clock.
  SendResult send(Direction direction, protocol::Message msg, double at_ms);

  /// Moves the clock to `to_ms` and returns every delivery due by then,
  /// ordered by delivery time with ties broken by send order.
  std::vector<Delivery> advance_clock(double to_ms);

  double now_ms() const { return now_ms_; }
  std::size_t pending() const { return queue_.size(); }
  const ChannelConfig & config() const { return config_; }

  /// Blackouts can be added at runtime (fault injection).
  void add_blackout(BlackoutWindow window);

  std::uint64_t sent_count() const { return sent_; }
  std::uint64_t dropped_count() const { return dropped_; }

private:
  bool in_blackout(double t) const;
  double uniform01();

  ChannelConfig config_;
  std::mt19937_64 rng_;
  double now_ms_{0.0};
  std::uint64_t sent_{0};
  std::uint64_t dropped_{0};
  std::array<double, 2> last_delivery_{{-1.0, -1.0}};
  std::map<std::pair<double, std::uint64_t>, Delivery> queue_;
};

}  // namespace tg::net

#endif  // TG__NET__CHANNEL_HPP_
