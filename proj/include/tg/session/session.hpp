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

#ifndef TG__SESSION__SESSION_HPP_
#define TG__SESSION__SESSION_HPP_

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "tg/net/channel.hpp"
#include "tg/session/endpoints.hpp"
#include "tg/session/operators.hpp"
#include "tg/session/scenario.hpp"

namespace tg::session
{
class Timeout : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class Outcome { Running, GoalReached, Rejected, MrmTerminated, Aborted, Timeout };

std::string_view to_string(Outcome outcome);
/// CLI exit code: 0 goal, 2 rejected trajectory, 3 MRM-terminated, 1 otherwise.
int exit_code(Outcome outcome);

struct SessionOptions
{
  /// Overrides the scenario channel seed.
  std::optional<std::uint64_t> seed;
  /// Added to the scenario channel blackouts.
  std::vector<net::BlackoutWindow> extra_blackouts;
  /// Scripted operator presses e-stop at the first Monitoring tick at or after this time.
  std::optional<std::int64_t> estop_at_ms;
  /// End the session as soon as the first MRM has brought the vehicle to a stop.
  bool abort_on_mrm{false};
  vehicle::TrackerConfig tracker;
  /// Simulated-time limit.
  std::int64_t max_sim_ms{600'000};
  /// Wall-clock limit; zero disables it.
  std::chrono::milliseconds wall_limit{0};
  /// Real-time pacing factor; zero runs as fast as possible.
  double realtime_factor{0.0};
};

/// Everything metrics and reports are computed from.
struct SessionRecord
{
  std::string scenario_name;
  std::uint64_t seed{0};
  std::vector<PhaseChange<protocol::OperatorPhase>> operator_phases;
  std::vector<PhaseChange<protocol::VehiclePhase>> vehicle_phases;
  vehicle::RunRecord run;
  vehicle::VehicleState final_state;
  std::vector<CommandLogEntry> commands;
  std::vector<MrmRecord> mrms;
  std::int64_t end_ms{0};
  bool ended{false};
  Outcome outcome{Outcome::Running};
  std::size_t footprint_hits{0};
  double max_cross_track{0.0};
  std::size_t rejected_checks{0};
};

/// One operator end, one vehicle end and the link between them, advanced in
/// 1 ms steps of simulated time.
class Session
{
public:
  using DeliveryHook = std::function<void(const net::Delivery &)>;
  /// After the session end message, wait this long for the vehicle to leave the session.
  static constexpr std::int64_t kEndGraceMs = 1000;

  Session(const Scenario & scenario, OperatorDriver & driver, SessionOptions options = {});
  Session(const Session &) = delete;
  Session & operator=(const Session &) = delete;

  /// Advances one millisecond. Returns false once the session has ended.
  bool step();
  bool ended() const { return outcome_ != Outcome::Running; }
  Outcome outcome() const { return outcome_; }
  std::int64_t now_ms() const { return now_; }

  /// Injects a blackout on the link, e.g. from the UI bridge.
  void add_blackout(net::BlackoutWindow w) { channel_.add_blackout(w); }
  /// Called for every delivered message, in delivery order.
  void on_delivery(DeliveryHook hook) { hook_ = std::move(hook); }

  const Scenario & scenario() const { return scenario_; }
  const OperatorEndpoint & operator_end() const { return operator_; }
  const VehicleEndpoint & vehicle_end() const { return vehicle_; }
  const net::Channel & channel() const { return channel_; }
  OperatorView view() const { return operator_.view(now_); }

  SessionRecord record() const;

private:
  void apply_commands();
  void check_end();

  const Scenario & scenario_;
  OperatorDriver & driver_;
  SessionOptions options_;
  net::Channel channel_;
  OperatorEndpoint operator_;
  VehicleEndpoint vehicle_;
  DeliveryHook hook_;
  std::int64_t now_{-1};
  std::optional<std::int64_t> handover_ms_;
  Outcome outcome_{Outcome::Running};
};

/// Runs a session to completion. Throws Timeout when the wall limit is exceeded.
SessionRecord run_session(const Scenario & scenario, OperatorDriver & driver, const SessionOptions & options = {});
/// Convenience: runs the scenario's scripted operator.
SessionRecord run_scripted(const Scenario & scenario, const SessionOptions & options = {});

}  // namespace tg::session

#endif  // TG__SESSION__SESSION_HPP_
