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

#ifndef TG__SESSION__OPERATORS_HPP_
#define TG__SESSION__OPERATORS_HPP_

#include <cstdint>
#include <deque>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "tg/session/endpoints.hpp"
#include "tg/session/scenario.hpp"
#include "tg/session/ui_command.hpp"

namespace tg::session
{
/// Something that decides operator commands, polled once per simulated ms.
class OperatorDriver
{
public:
  virtual ~OperatorDriver() = default;
  virtual std::vector<UiCommand> poll(const OperatorView & view) = 0;
};

/// Headless stand-in for the human operator. Waypoint cadence and approval
/// delay come from the scenario script.
class ScriptedOperator : public OperatorDriver
{
public:
  /// Gives up on a phase that makes no progress for this long.
  static constexpr std::int64_t kWatchdogMs = 5000;
  /// Resend the e-stop when no MRM completion has been seen for this long.
  static constexpr std::int64_t kEStopRetryMs = 5000;
  /// How long to wait for telemetry confirming the goal before giving up.
  static constexpr std::int64_t kGoalWaitMs = 1000;
  /// Remaining waypoints closer than this to the stop point are skipped on replanning.
  static constexpr double kReplanSkip = 2.0;

  explicit ScriptedOperator(OperatorScript script, std::optional<std::int64_t> estop_at_ms = std::nullopt);

  std::vector<UiCommand> poll(const OperatorView & view) override;

private:
  void plan_for_creation(const OperatorView & view);

  OperatorScript script_;
  std::optional<std::int64_t> estop_at_ms_;
  bool estop_done_{false};
  // Identifies the phase entry currently being handled.
  std::int64_t epoch_{-1};
  protocol::OperatorPhase epoch_phase_{protocol::OperatorPhase::Idle};
  std::size_t segment_{0};
  // Trajectory that was active when the current segment began.
  std::uint64_t segment_base_id_{0};
  bool started_{false};
  std::vector<traj::Waypoint> plan_;
  std::size_t added_{0};
  bool finish_{false};
  std::int64_t last_estop_ms_{0};
};

/// One recorded UI frame.
struct ReplayEntry
{
  std::int64_t t_ms{0};
  std::string frame;
};

/// Replays recorded ui_command frames at their timestamps.
class ReplayOperator : public OperatorDriver
{
public:
  explicit ReplayOperator(std::vector<ReplayEntry> entries);
  std::vector<UiCommand> poll(const OperatorView & view) override;

private:
  std::vector<ReplayEntry> entries_;
  std::size_t next_{0};
};

/// Fixture format: one `t_ms<TAB>frame` per line.
std::vector<ReplayEntry> load_replay(const std::filesystem::path & file);
void save_replay(const std::filesystem::path & file, const std::vector<CommandLogEntry> & log);

/// Thread-safe queue fed from outside the session loop (the UI bridge).
class QueueOperator : public OperatorDriver
{
public:
  void push(UiCommand cmd);
  std::vector<UiCommand> poll(const OperatorView & view) override;

private:
  std::mutex mutex_;
  std::deque<UiCommand> queue_;
};

}  // namespace tg::session

#endif  // TG__SESSION__OPERATORS_HPP_
