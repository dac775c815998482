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

#include "tg/session/session.hpp"

#include <thread>

#include <spdlog/spdlog.h>

namespace tg::session
{
std::string_view to_string(Outcome outcome)
{
  switch (outcome) {
    case Outcome::Running: return "running";
    case Outcome::GoalReached: return "goal_reached";
    case Outcome::Rejected: return "rejected";
    case Outcome::MrmTerminated: return "mrm_terminated";
    case Outcome::Aborted: return "aborted";
    case Outcome::Timeout: return "timeout";
  }
  return "unknown";
}

int exit_code(Outcome outcome)
{
  switch (outcome) {
    case Outcome::GoalReached: return 0;
    case Outcome::Rejected: return 2;
    case Outcome::MrmTerminated: return 3;
    default: return 1;
  }
}

namespace
{
net::ChannelConfig channel_config(const Scenario & s, const SessionOptions & o)
{
  net::ChannelConfig c = s.channel;
  if (o.seed) c.seed = *o.seed;
  return c;
}
}  // namespace

Session::Session(const Scenario & scenario, OperatorDriver & driver, SessionOptions options)
: scenario_(scenario),
  driver_(driver),
  options_(std::move(options)),
  channel_(channel_config(scenario, options_)),
  operator_(scenario, [this](const protocol::Message & m) { channel_.send(net::Direction::ToVehicle, m, now_); }),
  vehicle_(
    scenario, [this](const protocol::Message & m) { channel_.send(net::Direction::ToOperator, m, now_); },
    options_.tracker)
{
  for (const auto & w : options_.extra_blackouts) channel_.add_blackout(w);
}

bool Session::step()
{
  if (ended()) {
    return false;
  }
  ++now_;
  for (const auto & d : channel_.advance_clock(static_cast<double>(now_))) {
    if (d.direction == net::Direction::ToVehicle) {
      vehicle_.on_message(d.message, now_);
    } else {
      operator_.on_message(d.message, now_);
    }
    if (hook_) hook_(d);
  }
  vehicle_.tick(now_);
  operator_.tick(now_);
  apply_commands();
  check_end();
  return !ended();
}

void Session::apply_commands()
{
  for (const auto & cmd : driver_.poll(operator_.view(now_))) {
    operator_.apply(cmd, now_);
  }
}

void Session::check_end()
{
  if (operator_.phase() == protocol::OperatorPhase::Handover) {
    if (!handover_ms_) handover_ms_ = now_;
    if (vehicle_.left_session() || now_ - *handover_ms_ >= kEndGraceMs) {
      if (operator_.session_end_goal().value_or(false) && operator_.in_goal()) {
        outcome_ = Outcome::GoalReached;
      } else if (operator_.rejected_checks() > 0) {
        outcome_ = Outcome::Rejected;
      } else {
        outcome_ = Outcome::Aborted;
      }
    }
  } else {
    handover_ms_.reset();
  }
  if (!ended() && options_.abort_on_mrm) {
    const auto & mrms = vehicle_.mrm_log();
    if (!mrms.empty() && mrms.front().completed_ms) outcome_ = Outcome::MrmTerminated;
  }
  if (!ended() && now_ >= options_.max_sim_ms) {
    outcome_ = Outcome::Timeout;
  }
  if (ended()) {
    spdlog::info("[{} ms] session ended: {}", now_, to_string(outcome_));
  }
}

SessionRecord Session::record() const
{
  SessionRecord r;
  r.scenario_name = scenario_.name;
  r.seed = channel_.config().seed;
  r.operator_phases = operator_.phase_log();
  r.vehicle_phases = vehicle_.phase_log();
  r.run = vehicle_.record();
  r.final_state = vehicle_.state();
  r.commands = operator_.command_log();
  r.mrms = vehicle_.mrm_log();
  r.end_ms = now_;
  r.ended = ended();
  r.outcome = outcome_;
  r.footprint_hits = vehicle_.footprint_hits();
  r.max_cross_track = vehicle_.max_cross_track();
  r.rejected_checks = operator_.rejected_checks();
  return r;
}

SessionRecord run_session(const Scenario & scenario, OperatorDriver & driver, const SessionOptions & options)
{
  Session session(scenario, driver, options);
  const auto wall0 = std::chrono::steady_clock::now();
  while (session.step()) {
    if (options.realtime_factor > 0.0) {
      const auto due = wall0 + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                 std::chrono::duration<double, std::milli>(session.now_ms() / options.realtime_factor));
      std::this_thread::sleep_until(due);
    }
    if (options.wall_limit.count() > 0 && session.now_ms() % 100 == 0 &&
        std::chrono::steady_clock::now() - wall0 > options.wall_limit) {
      throw Timeout("session exceeded the wall-clock limit");
    }
  }
  return session.record();
}

SessionRecord run_scripted(const Scenario & scenario, const SessionOptions & options)
{
  ScriptedOperator op(scenario.script, options.estop_at_ms);
  return run_session(scenario, op, options);
}

}  // namespace tg::session
