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

#include "tg/session/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "tg/protocol/codec.hpp"

namespace tg::session
{
using nlohmann::json;

namespace
{
[[noreturn]] void schema(const std::string & what) { throw SchemaError("scenario: " + what); }

void only_keys(const json & j, const std::set<std::string> & allowed, const std::string & where)
{
  if (!j.is_object()) schema(where + " must be an object");
  for (const auto & [k, v] : j.items()) {
    if (!allowed.count(k)) schema("unknown key '" + k + "' in " + where);
  }
}

const json & need(const json & j, const char * key, const std::string & where)
{
  if (!j.contains(key)) schema("missing '" + std::string(key) + "' in " + where);
  return j.at(key);
}

double number(const json & j, const std::string & where)
{
  if (!j.is_number() || !std::isfinite(j.get<double>())) schema(where + " must be a finite number");
  return j.get<double>();
}

std::int64_t integer(const json & j, const std::string & where)
{
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) schema(where + " must be a non-negative integer");
  return j.get<std::int64_t>();
}

Vec2 point(const json & j, const std::string & where)
{
  if (!j.is_array() || j.size() != 2) schema(where + " must be an [x, y] pair");
  return {number(j[0], where), number(j[1], where)};
}

Polygon polygon(const json & j, const std::string & where)
{
  if (!j.is_array()) schema(where + " must be a list of points");
  Polygon p;
  for (const auto & v : j) p.push_back(point(v, where));
  // Closed rings may repeat the first vertex.
  if (p.size() > 1 && p.front() == p.back()) p.pop_back();
  if (p.size() < 3) throw GeometryError(where + " needs at least 3 vertices");
  if (signed_area(p) <= 0.0) throw GeometryError(where + " must be counter-clockwise with positive area");
  return p;
}

std::vector<traj::Waypoint> waypoints(const json & j, const std::string & where)
{
  if (!j.is_array()) schema(where + " must be a list of points");
  std::vector<traj::Waypoint> out;
  for (const auto & v : j) {
    const auto p = point(v, where);
    out.push_back({p.x, p.y});
  }
  return out;
}

json polygon_json(const Polygon & p)
{
  json out = json::array();
  for (const auto & v : p) out.push_back({v.x, v.y});
  return out;
}

}  // namespace

Scenario parse_scenario(const json & j)
{
  only_keys(j, {"name", "bounds", "obstacles", "start_pose", "goal", "limits", "channel", "handover_delay_ms",
                "vehicle", "operator"},
            "scenario");
  Scenario s;
  const auto & name = need(j, "name", "scenario");
  if (!name.is_string()) schema("name must be a string");
  s.name = name.get<std::string>();
  s.bounds = polygon(need(j, "bounds", "scenario"), "bounds");

  if (j.contains("obstacles")) {
    if (!j.at("obstacles").is_array()) schema("obstacles must be a list");
    int i = 0;
    for (const auto & o : j.at("obstacles")) s.obstacles.push_back(polygon(o, "obstacle " + std::to_string(i++)));
  }

  const auto & sp = need(j, "start_pose", "scenario");
  only_keys(sp, {"x", "y", "psi"}, "start_pose");
  s.start_pose = {number(need(sp, "x", "start_pose"), "start_pose.x"), number(need(sp, "y", "start_pose"), "start_pose.y"),
                  sp.contains("psi") ? number(sp.at("psi"), "start_pose.psi") : 0.0};

  const auto & g = need(j, "goal", "scenario");
  only_keys(g, {"x", "y", "radius"}, "goal");
  s.goal = {number(need(g, "x", "goal"), "goal.x"), number(need(g, "y", "goal"), "goal.y"),
            g.contains("radius") ? number(g.at("radius"), "goal.radius") : 1.0};
  if (s.goal.radius <= 0.0) schema("goal.radius must be positive");

  if (j.contains("limits")) {
    const auto & l = j.at("limits");
    only_keys(l, {"v_max", "a_max", "d_max", "a_lat_max", "j_max", "kappa_max", "d_mrm"}, "limits");
    json full = protocol::limits_to_json(traj::LimitSet{});
    for (const auto & [k, v] : l.items()) full[k] = number(v, "limits." + k);
    s.limits = protocol::limits_from_json(full);
    try {
      traj::validate(s.limits);
    } catch (const traj::TrajError & e) {
      schema(e.what());
    }
  }

  if (j.contains("channel")) {
    const auto & c = j.at("channel");
    only_keys(c, {"base_delay_ms", "jitter_ms", "loss_prob", "blackout_windows", "seed"}, "channel");
    if (c.contains("base_delay_ms")) s.channel.base_delay_ms = number(c.at("base_delay_ms"), "channel.base_delay_ms");
    if (c.contains("jitter_ms")) s.channel.jitter_ms = number(c.at("jitter_ms"), "channel.jitter_ms");
    if (c.contains("loss_prob")) s.channel.loss_prob = number(c.at("loss_prob"), "channel.loss_prob");
    if (c.contains("seed")) s.channel.seed = static_cast<std::uint64_t>(integer(c.at("seed"), "channel.seed"));
    if (c.contains("blackout_windows")) {
      for (const auto & w : c.at("blackout_windows")) {
        const auto p = point(w, "channel.blackout_windows");
        s.channel.blackout_windows.push_back({p.x, p.y});
      }
    }
    try {
      net::validate(s.channel);
    } catch (const std::invalid_argument & e) {
      schema(e.what());
    }
  }

  if (j.contains("handover_delay_ms")) s.handover_delay_ms = integer(j.at("handover_delay_ms"), "handover_delay_ms");

  if (j.contains("vehicle")) {
    const auto & v = j.at("vehicle");
    only_keys(v, {"wheelbase", "max_steer", "actuator_lag", "width", "length"}, "vehicle");
    if (v.contains("wheelbase")) s.vehicle.wheelbase = number(v.at("wheelbase"), "vehicle.wheelbase");
    if (v.contains("max_steer")) s.vehicle.max_steer = number(v.at("max_steer"), "vehicle.max_steer");
    if (v.contains("actuator_lag")) s.vehicle.actuator_lag = number(v.at("actuator_lag"), "vehicle.actuator_lag");
    if (v.contains("width")) s.vehicle.width = number(v.at("width"), "vehicle.width");
    if (v.contains("length")) s.vehicle.length = number(v.at("length"), "vehicle.length");
    try {
      vehicle::validate(s.vehicle);
    } catch (const std::invalid_argument & e) {
      schema(e.what());
    }
  }

  if (j.contains("operator")) {
    const auto & o = j.at("operator");
    only_keys(o, {"segments", "takeover_time_ms", "think_time_per_waypoint_ms", "approval_time_ms",
                  "acknowledge_time_ms"},
              "operator");
    if (o.contains("segments")) {
      if (!o.at("segments").is_array()) schema("operator.segments must be a list");
      for (const auto & seg : o.at("segments")) s.script.segments.push_back(waypoints(seg, "operator.segments"));
    }
    if (o.contains("takeover_time_ms")) s.script.takeover_time_ms = integer(o.at("takeover_time_ms"), "operator.takeover_time_ms");
    if (o.contains("think_time_per_waypoint_ms")) {
      s.script.think_time_per_waypoint_ms = integer(o.at("think_time_per_waypoint_ms"), "operator.think_time_per_waypoint_ms");
    }
    if (o.contains("approval_time_ms")) s.script.approval_time_ms = integer(o.at("approval_time_ms"), "operator.approval_time_ms");
    if (o.contains("acknowledge_time_ms")) {
      s.script.acknowledge_time_ms = integer(o.at("acknowledge_time_ms"), "operator.acknowledge_time_ms");
    }
  }

  const Vec2 start{s.start_pose.x, s.start_pose.y};
  const Vec2 goal{s.goal.x, s.goal.y};
  if (!point_in_polygon(start, s.bounds)) throw GeometryError("start pose is outside the bounds");
  if (!point_in_polygon(goal, s.bounds)) throw GeometryError("goal is outside the bounds");
  for (const auto & o : s.obstacles) {
    if (point_in_polygon(start, o)) throw GeometryError("start pose is inside an obstacle");
    if (point_in_polygon(goal, o)) throw GeometryError("goal is inside an obstacle");
  }
  for (const auto & seg : s.script.segments) {
    for (const auto & w : seg) {
      if (!point_in_polygon(Vec2{w.x, w.y}, s.bounds)) throw GeometryError("scripted waypoint outside the bounds");
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path & file)
{
  std::ifstream in(file);
  if (!in) {
    throw SchemaError("cannot open scenario file " + file.string());
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception & e) {
    throw SchemaError(std::string("scenario: invalid JSON: ") + e.what());
  }
  return parse_scenario(j);
}

json scenario_to_json(const Scenario & s)
{
  json obstacles = json::array();
  for (const auto & o : s.obstacles) obstacles.push_back(polygon_json(o));
  json windows = json::array();
  for (const auto & w : s.channel.blackout_windows) windows.push_back({w.start_ms, w.end_ms});
  json segments = json::array();
  for (const auto & seg : s.script.segments) {
    json pts = json::array();
    for (const auto & w : seg) pts.push_back({w.x, w.y});
    segments.push_back(pts);
  }
  return json{
    {"name", s.name},
    {"bounds", polygon_json(s.bounds)},
    {"obstacles", obstacles},
    {"start_pose", {{"x", s.start_pose.x}, {"y", s.start_pose.y}, {"psi", s.start_pose.psi}}},
    {"goal", {{"x", s.goal.x}, {"y", s.goal.y}, {"radius", s.goal.radius}}},
    {"limits", protocol::limits_to_json(s.limits)},
    {"channel",
     {{"base_delay_ms", s.channel.base_delay_ms},
      {"jitter_ms", s.channel.jitter_ms},
      {"loss_prob", s.channel.loss_prob},
      {"blackout_windows", windows},
      {"seed", s.channel.seed}}},
    {"handover_delay_ms", s.handover_delay_ms},
    {"vehicle",
     {{"wheelbase", s.vehicle.wheelbase},
      {"max_steer", s.vehicle.max_steer},
      {"actuator_lag", s.vehicle.actuator_lag},
      {"width", s.vehicle.width},
      {"length", s.vehicle.length}}},
    {"operator",
     {{"segments", segments},
      {"takeover_time_ms", s.script.takeover_time_ms},
      {"think_time_per_waypoint_ms", s.script.think_time_per_waypoint_ms},
      {"approval_time_ms", s.script.approval_time_ms},
      {"acknowledge_time_ms", s.script.acknowledge_time_ms}}}};
}

}  // namespace tg::session
