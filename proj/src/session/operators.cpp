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

#include "tg/session/operators.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "tg/protocol/codec.hpp"

namespace tg::session
{
using protocol::OperatorPhase;

ScriptedOperator::ScriptedOperator(OperatorScript script, std::optional<std::int64_t> estop_at_ms)
: script_(std::move(script)), estop_at_ms_(estop_at_ms)
{
  if (script_.segments.empty()) {
    throw std::invalid_argument("operator script has no segments");
  }
}

namespace
{
// Arc length of the trajectory sample nearest to p.
double nearest_s(const traj::Trajectory & t, const traj::Waypoint & p)
{
  double best = std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (const auto & q : t.points) {
    const double d = std::hypot(q.x - p.x, q.y - p.y);
    if (d < best) {
      best = d;
      s = q.s;
    }
  }
  return s;
}
}  // namespace

void ScriptedOperator::plan_for_creation(const OperatorView & view)
{
  plan_.clear();
  added_ = 0;
  finish_ = false;
  if (!started_) {
    started_ = true;
    segment_ = 0;
    segment_base_id_ = view.active ? view.active->id : 0;
    plan_ = script_.segments[0];
    return;
  }
  switch (view.previous_phase) {
    case OperatorPhase::Monitoring:
      ++segment_;
      segment_base_id_ = view.active ? view.active->id : 0;
      if (segment_ < script_.segments.size()) {
        plan_ = script_.segments[segment_];
      } else {
        finish_ = true;
      }
      return;
    case OperatorPhase::EmergencyStopped: {
      // Replan from the stop point through what is left of the interrupted segment.
      const auto & seg = script_.segments[segment_];
      if (!view.active || view.active->id == segment_base_id_) {
        // Nothing of this segment was driven yet.
        plan_ = seg;
        return;
      }
      if (view.vehicle) {
        const double s_stop = view.vehicle->s_progress;
        for (const auto & w : seg) {
          if (nearest_s(*view.active, w) > s_stop + kReplanSkip) plan_.push_back(w);
        }
      }
      if (plan_.empty()) plan_.push_back(seg.back());
      return;
    }
    default:
      // A rejected check or proposal: the script has no alternative plan.
      finish_ = true;
      return;
  }
}

std::vector<UiCommand> ScriptedOperator::poll(const OperatorView & view)
{
  std::vector<UiCommand> out;
  const std::int64_t now = view.now_ms;
  const std::int64_t since = view.phase_since_ms;
  const bool entered = since != epoch_ || view.phase != epoch_phase_;
  epoch_ = since;
  epoch_phase_ = view.phase;

  switch (view.phase) {
    case OperatorPhase::Idle:
    case OperatorPhase::Handover: break;
    case OperatorPhase::Takeover:
      if (now >= since + script_.takeover_time_ms) out.push_back({UiCommandKind::Takeover});
      break;
    case OperatorPhase::TrajectoryCreation: {
      if (entered) {
        plan_for_creation(view);
        if (view.draft_size > 0) out.push_back({UiCommandKind::Clear});
      }
      if (view.vehicle_in_goal || (finish_ && now >= since + kGoalWaitMs)) {
        out.push_back({UiCommandKind::EndSession});
        break;
      }
      if (finish_) break;
      while (added_ < plan_.size() &&
             now >= since + static_cast<std::int64_t>(added_ + 1) * script_.think_time_per_waypoint_ms) {
        out.push_back({UiCommandKind::AddWaypoint, plan_[added_].x, plan_[added_].y});
        ++added_;
      }
      if (added_ == plan_.size() && !out.empty()) out.push_back({UiCommandKind::Submit});
      break;
    }
    case OperatorPhase::AwaitCheck:
      if (now >= since + kWatchdogMs) out.push_back({UiCommandKind::EStop});
      break;
    case OperatorPhase::TrajectoryApproval:
      if (now >= since + script_.approval_time_ms) out.push_back({UiCommandKind::Approve});
      break;
    case OperatorPhase::Monitoring:
      if (estop_at_ms_ && !estop_done_ && now >= *estop_at_ms_) {
        estop_done_ = true;
        out.push_back({UiCommandKind::EStop});
      } else if (!view.tracking_started && now >= since + kWatchdogMs) {
        out.push_back({UiCommandKind::EStop});
      }
      break;
    case OperatorPhase::EmergencyStopped:
      if (entered) last_estop_ms_ = since;
      if (view.mrm_completed_ms) {
        if (now >= *view.mrm_completed_ms + script_.acknowledge_time_ms) {
          out.push_back({UiCommandKind::Acknowledge});
        }
      } else if (now >= last_estop_ms_ + kEStopRetryMs) {
        last_estop_ms_ = now;
        out.push_back({UiCommandKind::EStop});
      }
      break;
  }
  return out;
}

// ---------------------------------------------------------------- replay

ReplayOperator::ReplayOperator(std::vector<ReplayEntry> entries) : entries_(std::move(entries))
{
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].t_ms < entries_[i - 1].t_ms) {
      throw std::invalid_argument("replay entries are not in time order");
    }
  }
}

std::vector<UiCommand> ReplayOperator::poll(const OperatorView & view)
{
  std::vector<UiCommand> out;
  while (next_ < entries_.size() && entries_[next_].t_ms <= view.now_ms) {
    out.push_back(parse_ui_command_frame(entries_[next_].frame));
    ++next_;
  }
  return out;
}

std::vector<ReplayEntry> load_replay(const std::filesystem::path & file)
{
  std::ifstream in(file);
  if (!in) {
    throw std::runtime_error("cannot open replay file " + file.string());
  }
  std::vector<ReplayEntry> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::runtime_error("replay line without a tab: " + line);
    }
    out.push_back({std::stoll(line.substr(0, tab)), line.substr(tab + 1)});
  }
  return out;
}

void save_replay(const std::filesystem::path & file, const std::vector<CommandLogEntry> & log)
{
  std::ofstream out(file);
  if (!out) {
    throw std::runtime_error("cannot write replay file " + file.string());
  }
  std::uint64_t seq = 0;
  for (const auto & e : log) {
    out << e.t_ms << '\t' << ui_command_frame(e.command, ++seq, e.t_ms).dump() << '\n';
  }
}

// ---------------------------------------------------------------- queue

void QueueOperator::push(UiCommand cmd)
{
  std::lock_guard lock(mutex_);
  queue_.push_back(cmd);
}

std::vector<UiCommand> QueueOperator::poll(const OperatorView &)
{
  std::lock_guard lock(mutex_);
  std::vector<UiCommand> out(queue_.begin(), queue_.end());
  queue_.clear();
  return out;
}

}  // namespace tg::session
