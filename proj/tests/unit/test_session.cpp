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

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "tg/session/metrics.hpp"
#include "tg/session/operators.hpp"
#include "tg/session/session.hpp"

using namespace tg::session;
using tg::protocol::OperatorPhase;
using tg::protocol::VehiclePhase;

namespace
{
const std::string kScenarios = TG_SOURCE_DIR "/scenarios/";
const std::string kFixtures = TG_SOURCE_DIR "/tests/fixtures/";

nlohmann::json minimal_scenario()
{
  return nlohmann::json::parse(R"({
    "name": "t",
    "bounds": [[-10,-10],[50,-10],[50,10],[-10,10]],
    "obstacles": [[[10,-2],[14,-2],[14,2],[10,2]]],
    "start_pose": {"x": 0, "y": 0},
    "goal": {"x": 30, "y": 0}
  })");
}

// Independent path-length oracle: polyline through the sampled positions.
double polyline_length(const tg::vehicle::RunRecord & run)
{
  double len = 0.0;
  for (std::size_t i = 1; i < run.rows.size(); ++i) {
    len += std::hypot(run.rows[i].x - run.rows[i - 1].x, run.rows[i].y - run.rows[i - 1].y);
  }
  return len;
}

std::string csv_of(const SessionRecord & r)
{
  std::ostringstream out;
  write_metrics_csv(out, r.scenario_name, r.seed, compute_metrics(r));
  return out.str();
}
}  // namespace

TEST_SUITE("scenario")
{
TEST_CASE("construction site: start-goal distance about 60 m")
{
  const auto s = load_scenario(kScenarios + "construction_site.json");
  const double d = std::hypot(s.goal.x - s.start_pose.x, s.goal.y - s.start_pose.y);
  CHECK(d == doctest::Approx(60.0).epsilon(2.0 / 60.0));
  REQUIRE(s.script.segments.size() == 1);
  CHECK(s.script.segments[0].size() >= 6);
  CHECK(s.script.segments[0].size() <= 7);
  CHECK(s.obstacles.size() == 1);
  CHECK(s.limits.v_max * 3.6 == doctest::Approx(5.0));
  CHECK(s.handover_delay_ms == 35700);
}

TEST_CASE("goal inside an obstacle is a geometry error")
{
  auto j = minimal_scenario();
  j["goal"] = {{"x", 12}, {"y", 0}};
  CHECK_THROWS_AS(parse_scenario(j), GeometryError);
  j = minimal_scenario();
  j["start_pose"] = {{"x", 99}, {"y", 0}};
  CHECK_THROWS_AS(parse_scenario(j), GeometryError);
}

TEST_CASE("empty obstacle list is a valid open field")
{
  auto j = minimal_scenario();
  j["obstacles"] = nlohmann::json::array();
  const auto s = parse_scenario(j);
  CHECK(s.obstacles.empty());
  CHECK_NOTHROW(load_scenario(kScenarios + "open_field.json"));
}

TEST_CASE("schema violations")
{
  auto bad = [](auto edit) {
    auto j = minimal_scenario();
    edit(j);
    return j;
  };
  CHECK_THROWS_AS(parse_scenario(bad([](auto & j) { j["colour"] = "red"; })), SchemaError);
  CHECK_THROWS_AS(parse_scenario(bad([](auto & j) { j.erase("bounds"); })), SchemaError);
  // clockwise obstacle
  CHECK_THROWS_AS(parse_scenario(bad([](auto & j) { j["obstacles"][0] = {{10, -2}, {10, 2}, {14, 2}, {14, -2}}; })),
                  GeometryError);
  CHECK_THROWS_AS(parse_scenario(bad([](auto & j) { j["limits"] = {{"v_max", -1}}; })), SchemaError);
  CHECK_THROWS_AS(parse_scenario(bad([](auto & j) { j["goal"]["x"] = "far"; })), SchemaError);
  CHECK_THROWS_AS(load_scenario(kScenarios + "no_such_file.json"), SchemaError);
}

TEST_CASE("explicitly closed polygons are accepted")
{
  auto j = minimal_scenario();
  j["obstacles"][0] = {{10, -2}, {14, -2}, {14, 2}, {10, 2}, {10, -2}};
  CHECK(parse_scenario(j).obstacles[0].size() == 4);
}

TEST_CASE("round trip through JSON")
{
  const auto s = load_scenario(kScenarios + "construction_site.json");
  const auto back = parse_scenario(scenario_to_json(s));
  CHECK(scenario_to_json(back) == scenario_to_json(s));
}
}

TEST_SUITE("metrics")
{
TEST_CASE("synthetic record gives exact phase durations")
{
  SessionRecord r;
  r.ended = true;
  r.outcome = Outcome::GoalReached;
  r.end_ms = 50'000;
  r.operator_phases = {{0, OperatorPhase::Idle},
                       {100, OperatorPhase::Takeover},
                       {200, OperatorPhase::TrajectoryCreation},
                       {10'200, OperatorPhase::AwaitCheck},
                       {10'300, OperatorPhase::TrajectoryApproval},
                       {12'300, OperatorPhase::Monitoring},
                       {30'000, OperatorPhase::TrajectoryCreation},
                       {34'000, OperatorPhase::AwaitCheck},
                       {34'100, OperatorPhase::TrajectoryApproval},
                       {35'000, OperatorPhase::Monitoring},
                       {49'000, OperatorPhase::Handover}};
  r.vehicle_phases = {{0, VehiclePhase::AutomatedOperation},
                      {150, VehiclePhase::AwaitTrajectory},
                      {12'400, VehiclePhase::TrajectoryTracking},
                      {20'000, VehiclePhase::EmergencyStop},
                      {21'000, VehiclePhase::AwaitTrajectory},
                      {35'100, VehiclePhase::TrajectoryTracking},
                      {48'900, VehiclePhase::AwaitTrajectory},
                      {49'100, VehiclePhase::AutomatedOperation}};
  // 2 m/s for 10 s, then 1 m/s for 10 s
  for (int i = 0; i <= 20; ++i) {
    tg::vehicle::RunRow row;
    row.t = i;
    row.v = i <= 10 ? 2.0 : 1.0;
    r.run.rows.push_back(row);
  }
  const auto m = compute_metrics(r);
  CHECK(m.t_plan == doctest::Approx(10.0 + 0.1 + 2.0 + 4.0 + 0.1 + 0.9));
  CHECK(m.t_drive == doctest::Approx(7.6 + 1.0 + 13.8));
  CHECK(m.t_total == doctest::Approx(m.t_plan + m.t_drive).epsilon(1e-12));
  CHECK(m.path_length == doctest::Approx(20.0 + 1.5 + 9.0));
  CHECK(m.v_mean == doctest::Approx(3.6 * m.path_length / m.t_drive));
  CHECK(m.n_segments == 2);
  CHECK(m.n_mrm == 1);
}

TEST_CASE("unfinished runs are rejected")
{
  SessionRecord r;
  r.operator_phases = {{0, OperatorPhase::Idle}};
  r.vehicle_phases = {{0, VehiclePhase::AutomatedOperation}};
  CHECK_THROWS_AS(compute_metrics(r), IncompleteRun);
}

TEST_CASE("CSV layout")
{
  SessionMetrics m{21.4, 51.2, 72.6, 4.32, 61.44, 1, 0};
  std::ostringstream out;
  write_metrics_csv(out, "x", 7, m);
  CHECK(out.str() ==
        "name,seed,t_plan_s,t_drive_s,t_total_s,v_mean_kmh,path_length_m,n_segments,n_mrm\n"
        "x,7,21.400,51.200,72.600,4.320,61.440,1,0\n");
}
}

TEST_SUITE("session")
{
TEST_CASE("nominal scripted run reaches the goal without MRM or contact")
{
  const auto s = load_scenario(kScenarios + "construction_site.json");
  const auto r = run_scripted(s);
  REQUIRE(r.outcome == Outcome::GoalReached);
  const auto m = compute_metrics(r);
  CHECK(m.n_mrm == 0);
  CHECK(m.n_segments == 1);
  CHECK(r.footprint_hits == 0);
  CHECK(m.path_length >= 60.0);
  CHECK(m.t_total == doctest::Approx(m.t_plan + m.t_drive).epsilon(1e-9));
  // Integrated speed agrees with the driven polyline.
  CHECK(std::abs(m.path_length - polyline_length(r.run)) < 0.1);
  const auto & last = r.run.rows.back();
  CHECK(std::hypot(last.x - s.goal.x, last.y - s.goal.y) <= s.goal.radius);
  CHECK(last.v < 0.05);
  // The handover constant is reported, never simulated.
  CHECK(m.t_total < s.handover_delay_ms / 1000.0 + 60.0);
  CHECK(r.operator_phases.front().t_ms == 0);
}

TEST_CASE("blackout mid-tracking: one MRM, then the next trajectory reaches the goal")
{
  const auto s = load_scenario(kScenarios + "construction_site.json");
  SessionOptions o;
  o.extra_blackouts.push_back({40'000, 40'100});
  const auto r = run_scripted(s, o);
  REQUIRE(r.outcome == Outcome::GoalReached);
  const auto m = compute_metrics(r);
  CHECK(m.n_mrm == 1);
  CHECK(m.n_segments == 2);
  REQUIRE(r.mrms.size() == 1);
  CHECK(r.mrms[0].cause == tg::protocol::MrmCause::NetworkLoss);
  CHECK(r.mrms[0].completed_ms.has_value());
  CHECK(r.footprint_hits == 0);
}

TEST_CASE("blackout during planning still counts one MRM and recovers")
{
  const auto s = load_scenario(kScenarios + "construction_site.json");
  SessionOptions o;
  o.extra_blackouts.push_back({10'000, 10'100});
  const auto r = run_scripted(s, o);
  REQUIRE(r.outcome == Outcome::GoalReached);
  CHECK(compute_metrics(r).n_mrm == 1);
  CHECK(r.footprint_hits == 0);
}

TEST_CASE("zero think time on a straight scenario: planning is only the check round trip")
{
  const auto s = load_scenario(kScenarios + "open_field.json");
  const auto r = run_scripted(s);
  REQUIRE(r.outcome == Outcome::GoalReached);
  const auto m = compute_metrics(r);
  CHECK(m.t_plan <= 2.0 * s.channel.base_delay_ms / 1000.0 + 0.002);
  CHECK(m.t_total == doctest::Approx(m.t_drive + m.t_plan).epsilon(1e-12));
  CHECK(m.t_total - m.t_drive < 0.1);
}

TEST_CASE("two segments: path length equals the sum of segment lengths")
{
  auto s = load_scenario(kScenarios + "open_field.json");
  s.script.segments = {{{15.0, 0.0}}, {{30.0, 0.0}}};
  const auto r = run_scripted(s);
  REQUIRE(r.outcome == Outcome::GoalReached);
  const auto m = compute_metrics(r);
  CHECK(m.n_segments == 2);
  // Straight segments: 15 m each.
  CHECK(std::abs(m.path_length - 30.0) < 0.1);
  CHECK(std::abs(m.path_length - polyline_length(r.run)) < 0.1);
}

TEST_CASE("replayed UI click fixture gives the scripted metrics")
{
  const auto s = load_scenario(kScenarios + "construction_site.json");
  const auto scripted = run_scripted(s);
  ReplayOperator replay(load_replay(kFixtures + "construction_site_clicks.replay"));
  const auto replayed = run_session(s, replay);
  REQUIRE(replayed.outcome == Outcome::GoalReached);
  CHECK(compute_metrics(replayed) == compute_metrics(scripted));
  CHECK(csv_of(replayed) == csv_of(scripted));
  // Noise in the fixture: one undone waypoint and one gated approve.
  std::size_t rejected = 0;
  for (const auto & c : replayed.commands) rejected += !c.accepted;
  CHECK(rejected == 1);
}

TEST_CASE("recording a scripted run and replaying it is lossless")
{
  const auto s = load_scenario(kScenarios + "open_field.json");
  const auto scripted = run_scripted(s);
  const auto path = std::filesystem::temp_directory_path() / "tg_open_field.replay";
  save_replay(path, scripted.commands);
  ReplayOperator replay(load_replay(path));
  CHECK(csv_of(run_session(s, replay)) == csv_of(scripted));
  std::filesystem::remove(path);
}

TEST_CASE("every queued command is logged once, in order, with monotone time")
{
  const auto s = load_scenario(kScenarios + "open_field.json");
  QueueOperator q;
  Session session(s, q);
  std::vector<UiCommand> pushed;
  auto push = [&](UiCommand c) {
    pushed.push_back(c);
    q.push(c);
  };
  push({UiCommandKind::Approve});  // illegal in Idle
  while (session.now_ms() < 100) session.step();
  push({UiCommandKind::Takeover});
  session.step();
  push({UiCommandKind::AddWaypoint, 10.0, 0.0});
  push({UiCommandKind::UndoWaypoint});
  push({UiCommandKind::AddWaypoint, 30.0, 0.0});
  session.step();
  push({UiCommandKind::EStop});  // outside the UI gate but legal for the operator machine
  while (session.now_ms() < 400) session.step();
  push({UiCommandKind::Acknowledge});
  while (session.now_ms() < 2000) session.step();
  const auto & log = session.operator_end().command_log();
  REQUIRE(log.size() == pushed.size());
  for (std::size_t i = 0; i < log.size(); ++i) {
    CHECK(log[i].command == pushed[i]);
    if (i > 0) CHECK(log[i].t_ms >= log[i - 1].t_ms);
  }
  CHECK_FALSE(log[0].accepted);
  CHECK(log[1].accepted);
}

TEST_CASE("rejected commands leave operator state unchanged")
{
  const auto s = load_scenario(kScenarios + "open_field.json");
  std::vector<tg::protocol::Message> sent;
  OperatorEndpoint op(s, [&](const tg::protocol::Message & m) { sent.push_back(m); });
  CHECK_FALSE(op.apply({UiCommandKind::Submit}, 5));
  CHECK_FALSE(op.apply({UiCommandKind::AddWaypoint, 1, 1}, 5));
  CHECK(op.phase() == OperatorPhase::Idle);
  CHECK(op.draft().empty());
  CHECK(sent.empty());
  CHECK(op.command_log().size() == 2);
}

TEST_CASE("proposal through the obstacle is rejected onboard: exit code 2")
{
  auto s = load_scenario(kScenarios + "construction_site.json");
  s.script.segments = {{{60.0, 0.0}}};
  const auto r = run_scripted(s);
  CHECK(r.outcome == Outcome::Rejected);
  CHECK(exit_code(r.outcome) == 2);
  CHECK(r.rejected_checks == 1);
  CHECK(compute_metrics(r).n_segments == 0);
}

TEST_CASE("operator e-stop during tracking: MRM within 70 ms, stop within 0.8 m")
{
  const auto s = load_scenario(kScenarios + "construction_site.json");
  SessionOptions o;
  o.estop_at_ms = 35'000;
  o.abort_on_mrm = true;
  const auto r = run_scripted(s, o);
  CHECK(r.outcome == Outcome::MrmTerminated);
  CHECK(exit_code(r.outcome) == 3);
  REQUIRE(r.mrms.size() == 1);
  const auto & mrm = r.mrms[0];
  std::int64_t pressed = -1;
  for (const auto & c : r.commands) {
    if (c.command.kind == UiCommandKind::EStop) pressed = c.t_ms;
  }
  REQUIRE(pressed >= 35'000);
  REQUIRE(mrm.activation_ms.has_value());
  CHECK(*mrm.activation_ms - pressed <= 70);
  CHECK(mrm.trigger_v * 3.6 == doctest::Approx(5.0).epsilon(0.02));
  CHECK(mrm.stop_s - mrm.trigger_s <= 0.8);
  CHECK(r.final_state.v == 0.0);
}

TEST_CASE("seeded runs are byte-identical; jitter and loss stay deterministic")
{
  auto s = load_scenario(kScenarios + "construction_site.json");
  s.channel.jitter_ms = 5.0;
  s.channel.loss_prob = 0.02;
  SessionOptions o;
  o.seed = 1234;
  const auto a = run_scripted(s, o);
  const auto b = run_scripted(s, o);
  CHECK(csv_of(a) == csv_of(b));
  std::ostringstream ra;
  std::ostringstream rb;
  tg::vehicle::write_csv(ra, a.run);
  tg::vehicle::write_csv(rb, b.run);
  CHECK(ra.str() == rb.str());
}

TEST_CASE("simulated time limit ends a stuck session as a timeout")
{
  auto s = load_scenario(kScenarios + "open_field.json");
  s.script.takeover_time_ms = 10'000'000;
  SessionOptions o;
  o.max_sim_ms = 2000;
  const auto r = run_scripted(s, o);
  CHECK(r.outcome == Outcome::Timeout);
  CHECK(exit_code(r.outcome) == 1);
}

TEST_CASE("wall-clock limit throws")
{
  auto s = load_scenario(kScenarios + "open_field.json");
  s.script.takeover_time_ms = 10'000'000;
  SessionOptions o;
  o.max_sim_ms = 100'000'000;
  o.wall_limit = std::chrono::milliseconds(50);
  CHECK_THROWS_AS(run_scripted(s, o), Timeout);
}
}
