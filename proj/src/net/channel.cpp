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

#include "tg/net/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tg::net
{
void validate(const ChannelConfig & c)
{
  if (!std::isfinite(c.base_delay_ms) || c.base_delay_ms < 0.0) {
    throw std::invalid_argument("base_delay_ms must be >= 0");
  }
  if (!std::isfinite(c.jitter_ms) || c.jitter_ms < 0.0 || (c.jitter_ms > 0.0 && c.jitter_ms >= c.base_delay_ms)) {
    throw std::invalid_argument("jitter_ms must be 0 or smaller than base_delay_ms");
  }
  if (!(c.loss_prob >= 0.0 && c.loss_prob < 1.0)) {
    throw std::invalid_argument("loss_prob must lie in [0, 1)");
  }
  for (std::size_t i = 0; i < c.blackout_windows.size(); ++i) {
    const auto & w = c.blackout_windows[i];
    if (!(w.end_ms > w.start_ms)) {
      throw std::invalid_argument("blackout window must have end > start");
    }
    if (i > 0 && w.start_ms < c.blackout_windows[i - 1].end_ms) {
      throw std::invalid_argument("blackout windows must be sorted and non-overlapping");
    }
  }
}

Channel::Channel(ChannelConfig config) : config_(std::move(config)), rng_(config_.seed)
{
  validate(config_);
}

double Channel::uniform01()
{
  // 53 random mantissa bits; identical on every standard library.
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

bool Channel::in_blackout(double t) const
{
  return std::any_of(config_.blackout_windows.begin(), config_.blackout_windows.end(),
                     [t](const BlackoutWindow & w) { return t >= w.start_ms && t < w.end_ms; });
}

void Channel::add_blackout(BlackoutWindow window)
{
  auto windows = config_.blackout_windows;
  windows.push_back(window);
  std::sort(windows.begin(), windows.end(),
            [](const auto & a, const auto & b) { return a.start_ms < b.start_ms; });
  ChannelConfig next = config_;
  next.blackout_windows = std::move(windows);
  validate(next);
  config_ = std::move(next);
}

SendResult Channel::send(Direction direction, protocol::Message msg, double at_ms)
{
  if (at_ms < now_ms_) {
    throw std::invalid_argument("send time is earlier than the channel clock");
  }
  // Both draws are always taken so the random stream does not depend on outcomes.
  const double jitter_draw = uniform01();
  const double loss_draw = uniform01();

  SendResult result;
  result.send_index = sent_++;
  const auto dir = static_cast<std::size_t>(direction);
  const double jitter = config_.jitter_ms * (2.0 * jitter_draw - 1.0);
  result.deliver_at_ms = std::max(at_ms + config_.base_delay_ms + jitter, last_delivery_[dir]);

  if (loss_draw < config_.loss_prob) {
    result.dropped = DropReason::RandomLoss;
  } else if (in_blackout(result.deliver_at_ms)) {
    result.dropped = DropReason::Blackout;
  }
  if (result.dropped != DropReason::None) {
    ++dropped_;
    return result;
  }
  last_delivery_[dir] = result.deliver_at_ms;
  queue_.emplace(
    std::make_pair(result.deliver_at_ms, result.send_index),
    Delivery{direction, at_ms, result.deliver_at_ms, result.send_index, std::move(msg)});
  return result;
}

std::vector<Delivery> Channel::advance_clock(double to_ms)
{
  if (to_ms < now_ms_) {
    throw std::invalid_argument("channel clock cannot run backwards");
  }
  now_ms_ = to_ms;
  std::vector<Delivery> out;
  while (!queue_.empty() && queue_.begin()->first.first <= to_ms) {
    out.push_back(std::move(queue_.begin()->second));
    queue_.erase(queue_.begin());
  }
  return out;
}

}  // namespace tg::net
