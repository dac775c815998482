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

// Command-line entry: headless runs, the UI bridge, plot data and waypoint checks.
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tg/session/bridge.hpp"
#include "tg/session/logging.hpp"
#include "tg/session/metrics.hpp"
#include "tg/traj/trajectory.hpp"
#include "tg/vehicle/check.hpp"

namespace fs = std::filesystem;
using namespace tg::session;

namespace
{
struct RunArgs
{
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::optional<double> vmax_kmh;
  std::optional<double> loss;
  std::optional<double> delay_ms;
  std::vector<std::string> blackouts;
  std::string out;
  std::optional<std::int64_t> estop_at_ms;
  bool abort_on_mrm{false};
  std::string record;
  std::string replay;
  std::string run_csv;
  double wall_limit_s{0.0};
};

tg::net::BlackoutWindow parse_blackout(const std::string & text)
{
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw CLI::ValidationError("--blackout", "expected START_MS:END_MS, got " + text);
  }
  return {std::stod(text.substr(0, colon)), std::stod(text.substr(colon + 1))};
}

Scenario scenario_with_overrides(const RunArgs & a)
{
  Scenario s = load_scenario(a.scenario);
  if (a.vmax_kmh) s.limits.v_max = *a.vmax_kmh / 3.6;
  if (a.loss) s.channel.loss_prob = *a.loss;
  if (a.delay_ms) s.channel.base_delay_ms = *a.delay_ms;
  tg::traj::validate(s.limits);
  tg::net::validate(s.channel);
  return s;
}

SessionOptions session_options(const RunArgs & a)
{
  SessionOptions o;
  o.seed = a.seed;
  for (const auto & b : a.blackouts) o.extra_blackouts.push_back(parse_blackout(b));
  o.estop_at_ms = a.estop_at_ms;
  o.abort_on_mrm = a.abort_on_mrm;
  o.wall_limit = std::chrono::milliseconds(static_cast<std::int64_t>(a.wall_limit_s * 1000.0));
  return o;
}

SessionRecord run_from_args(const RunArgs & a, const Scenario & s)
{
  const auto options = session_options(a);
  if (!a.replay.empty()) {
    ReplayOperator op(load_replay(a.replay));
    return run_session(s, op, options);
  }
  return run_scripted(s, options);
}

void write_file(const fs::path & path, const std::string & text)
{
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

int cmd_run(const RunArgs & a)
{
  const auto s = scenario_with_overrides(a);
  const auto rec = run_from_args(a, s);
  const auto m = compute_metrics(rec);
  std::ostringstream csv;
  write_metrics_csv(csv, s.name, rec.seed, m);
  if (a.out.empty()) {
    std::cout << csv.str();
  } else {
    write_file(a.out, csv.str());
  }
  if (!a.record.empty()) save_replay(a.record, rec.commands);
  if (!a.run_csv.empty()) {
    std::ofstream out(a.run_csv);
    tg::vehicle::write_csv(out, rec.run);
  }
  std::cerr << "outcome: " << to_string(rec.outcome) << " (DC baseline " << kDirectControlTotalS << " s, "
            << kDirectControlMeanSpeedKmh << " km/h)\n";
  return exit_code(rec.outcome);
}

int cmd_plot_data(const RunArgs & a, const std::string & out_dir)
{
  const auto s = scenario_with_overrides(a);
  const auto rec = run_from_args(a, s);
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);

  std::string path = "t,x,y,psi,s_progress\n";
  std::string velocity = "t,v_kmh,a,mrm_active\n";
  char buf[160];
  for (const auto & r : rec.run.rows) {
    std::snprintf(buf, sizeof buf, "%.3f,%.4f,%.4f,%.5f,%.4f\n", r.t, r.x, r.y, r.psi, r.s_progress);
    path += buf;
    std::snprintf(buf, sizeof buf, "%.3f,%.4f,%.4f,%d\n", r.t, r.v * 3.6, r.a, r.mrm_active ? 1 : 0);
    velocity += buf;
  }
  std::string timing = "actor,phase,start_s,end_s\n";
  auto add_phases = [&](const char * actor, const auto & log) {
    for (std::size_t i = 0; i < log.size(); ++i) {
      const std::int64_t end = i + 1 < log.size() ? log[i + 1].t_ms : rec.end_ms;
      if (end == log[i].t_ms) continue;
      std::snprintf(buf, sizeof buf, "%s,%s,%.3f,%.3f\n", actor, std::string(tg::protocol::to_string(log[i].phase)).c_str(),
                    log[i].t_ms / 1000.0, end / 1000.0);
      timing += buf;
    }
  };
  add_phases("operator", rec.operator_phases);
  add_phases("vehicle", rec.vehicle_phases);

  std::string obstacles = "obstacle,x,y\n";
  for (std::size_t k = 0; k < s.obstacles.size(); ++k) {
    for (const auto & v : s.obstacles[k]) {
      std::snprintf(buf, sizeof buf, "%zu,%.3f,%.3f\n", k, v.x, v.y);
      obstacles += buf;
    }
  }
  write_file(dir / "path.csv", path);
  write_file(dir / "velocity.csv", velocity);
  write_file(dir / "timing.csv", timing);
  write_file(dir / "obstacles.csv", obstacles);
  std::ostringstream csv;
  write_metrics_csv(csv, s.name, rec.seed, compute_metrics(rec));
  write_file(dir / "metrics.csv", csv.str());
  return exit_code(rec.outcome);
}

int cmd_check(const std::string & scenario_file, const std::string & waypoint_file)
{
  const auto s = load_scenario(scenario_file);
  std::ifstream in(waypoint_file);
  if (!in) throw std::runtime_error("cannot open " + waypoint_file);
  const auto j = nlohmann::json::parse(in);
  const auto & arr = j.is_object() ? j.at("waypoints") : j;
  std::vector<tg::traj::Waypoint> wps{{s.start_pose.x, s.start_pose.y}};
  for (const auto & p : arr) {
    const tg::traj::Waypoint w{p.at(0).get<double>(), p.at(1).get<double>()};
    if (std::hypot(w.x - wps.back().x, w.y - wps.back().y) > 1e-9) wps.push_back(w);
  }
  tg::traj::Trajectory t;
  try {
    t = tg::traj::build_trajectory(wps, s.limits);
  } catch (const tg::traj::TrajError & e) {
    std::cout << "rejected: " << e.what() << "\n";
    return 2;
  }
  const auto report = tg::vehicle::check_trajectory(t, s.vehicle, s.world(), s.limits, tg::Vec2{s.start_pose.x, s.start_pose.y});
  if (report.ok()) {
    std::printf("ok: %zu samples, length %.2f m, duration %.2f s\n", t.points.size(), t.length(), t.t.back());
    return 0;
  }
  std::cout << "rejected:";
  for (const auto & r : report.reason_names()) std::cout << ' ' << r;
  std::cout << "\n";
  return 2;
}

volatile std::sig_atomic_t g_interrupted = 0;
extern "C" void on_signal(int) { g_interrupted = 1; }

int cmd_serve(const RunArgs & a, const std::string & bind, double realtime)
{
  const auto s = scenario_with_overrides(a);
  BridgeOptions b;
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--bind", "expected HOST:PORT");
  b.address = bind.substr(0, colon);
  b.port = static_cast<std::uint16_t>(std::stoi(bind.substr(colon + 1)));
  b.realtime_factor = realtime;
  b.session = session_options(a);
  b.session.max_sim_ms = 3'600'000;
  UiServer server(s, b);
  server.start();
  std::cerr << "serving ws://" << b.address << ":" << server.port() << "/ws\n";
  std::signal(SIGINT, on_signal);
  while (!server.session_ended() && !g_interrupted) {
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
  server.stop();
  const auto rec = server.snapshot();
  if (!rec.ended) return 1;
  const auto m = compute_metrics(rec);
  write_metrics_csv(std::cout, s.name, rec.seed, m);
  return exit_code(rec.outcome);
}

void add_run_flags(CLI::App * sub, RunArgs & a)
{
  sub->add_option("--scenario", a.scenario, "scenario JSON file")->required()->check(CLI::ExistingFile);
  sub->add_option("--seed", a.seed, "channel RNG seed");
  sub->add_option("--vmax", a.vmax_kmh, "speed limit, km/h")->check(CLI::PositiveNumber);
  sub->add_option("--loss", a.loss, "per-message loss probability")->check(CLI::Range(0.0, 0.999999));
  sub->add_option("--delay", a.delay_ms, "one-way base delay, ms")->check(CLI::NonNegativeNumber);
  sub->add_option("--blackout", a.blackouts, "link blackout START_MS:END_MS (repeatable)");
  sub->add_option("--estop-at", a.estop_at_ms, "scripted e-stop time, ms");
  sub->add_flag("--abort-on-mrm", a.abort_on_mrm, "end the session after the first MRM");
  sub->add_option("--replay", a.replay, "replay recorded UI commands instead of the script")->check(CLI::ExistingFile);
  sub->add_option("--wall-limit", a.wall_limit_s, "wall-clock limit, s (0 = none)");
}
}  // namespace

int main(int argc, char ** argv)
{
  init_logging();
  CLI::App app{"Trajectory-guidance teleoperation simulator"};
  app.require_subcommand(1);

  RunArgs run;
  auto * run_cmd = app.add_subcommand("run", "headless scripted session");
  add_run_flags(run_cmd, run);
  run_cmd->add_option("--out", run.out, "metrics CSV path (stdout if omitted)");
  run_cmd->add_option("--record", run.record, "write the operator commands as a replay fixture");
  run_cmd->add_option("--run-csv", run.run_csv, "write the vehicle run record");

  RunArgs serve;
  std::string bind = "127.0.0.1:8765";
  double realtime = 1.0;
  auto * serve_cmd = app.add_subcommand("serve", "serve the operator UI over WebSocket");
  add_run_flags(serve_cmd, serve);
  serve_cmd->add_option("--bind", bind, "HOST:PORT");
  serve_cmd->add_option("--realtime", realtime, "simulated ms per wall ms")->check(CLI::PositiveNumber);

  RunArgs plot;
  std::string out_dir = "plot-data";
  auto * plot_cmd = app.add_subcommand("plot-data", "path, velocity and timing CSVs of a scripted run");
  add_run_flags(plot_cmd, plot);
  plot_cmd->add_option("--out-dir", out_dir, "output directory");

  std::string check_scenario;
  std::string check_waypoints;
  auto * check_cmd = app.add_subcommand("check", "validate a waypoint file against a scenario");
  check_cmd->add_option("--scenario", check_scenario)->required()->check(CLI::ExistingFile);
  check_cmd->add_option("--waypoints", check_waypoints, "JSON array of [x, y]")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(run);
    if (*serve_cmd) return cmd_serve(serve, bind, realtime);
    if (*plot_cmd) return cmd_plot_data(plot, out_dir);
    if (*check_cmd) return cmd_check(check_scenario, check_waypoints);
  } catch (const CLI::Error & e) {
    return app.exit(e);
  } catch (const BindError & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
