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

#include "tg/protocol/heartbeat.hpp"

#include <algorithm>
#include <stdexcept>

namespace tg::protocol
{
HeartbeatMonitor::HeartbeatMonitor(std::int64_t threshold_ms) : threshold_(threshold_ms)
{
  if (threshold_ms <= 0) {
    throw std::invalid_argument("loss threshold must be positive");
  }
}

void HeartbeatMonitor::arm(std::int64_t now_ms)
{
  last_heard_ = now_ms;
  reported_ = false;
}

void HeartbeatMonitor::disarm()
{
  last_heard_.reset();
  reported_ = false;
}

void HeartbeatMonitor::on_arrival(std::int64_t at_ms)
{
  if (!last_heard_) {
    return;
  }
  last_heard_ = std::max(*last_heard_, at_ms);
  reported_ = false;
}

LinkStatus HeartbeatMonitor::status(std::int64_t now_ms) const
{
  if (last_heard_ && now_ms - *last_heard_ > threshold_) {
    return LinkStatus::Lost;
  }
  return LinkStatus::Alive;
}

bool HeartbeatMonitor::poll_loss_edge(std::int64_t now_ms)
{
  if (reported_ || status(now_ms) != LinkStatus::Lost) {
    return false;
  }
  reported_ = true;
  return true;
}

}  // namespace tg::protocol
