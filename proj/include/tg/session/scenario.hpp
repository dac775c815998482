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

#ifndef TG__SESSION__SCENARIO_HPP_
#define TG__SESSION__SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tg/geometry.hpp"
#include "tg/net/channel.hpp"
#include "tg/traj/types.hpp"
#include "tg/vehicle/check.hpp"
#include "tg/vehicle/model.hpp"

namespace tg::session
{
class SchemaError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct Pose
{
  double x{0.0};
  double y{0.0};
  double psi{0.0};
};

struct Goal
{
  double x{0.0};
  double y{0.0};
  double radius{1.0};
};

/// Default scripted-operator behaviour; all times in simulated ms.
struct OperatorScript
{
  /// Waypoints per trajectory segment, excluding the vehicle's own position.
  std::vector<std::vector<traj::Waypoint>> segments;
  std::int64_t takeover_time_ms{0};
  std::int64_t think_time_per_waypoint_ms{3000};
  std::int64_t approval_time_ms{2000};
  std::int64_t acknowledge_time_ms{1000};
};

/// Cloud handover time excluded from all reported timings.
inline constexpr std::int64_t kDefaultHandoverDelayMs = 35700;

struct Scenario
{
  std::string name;
  Polygon bounds;
  std::vector<Polygon> obstacles;
  Pose start_pose;
  Goal goal;
  traj::LimitSet limits;
  net::ChannelConfig channel;
  std::int64_t handover_delay_ms{kDefaultHandoverDelayMs};
  vehicle::VehicleParams vehicle;
  OperatorScript script;

  vehicle::World world() const { return {bounds, obstacles}; }
};

/// Throws SchemaError for missing keys, wrong types or bad values, and
/// GeometryError when the start or goal is outside the bounds or inside an
/// obstacle, or a polygon is degenerate or clockwise.
Scenario parse_scenario(const nlohmann::json & j);
Scenario load_scenario(const std::filesystem::path & file);

nlohmann::json scenario_to_json(const Scenario & s);

}  // namespace tg::session

#endif  // TG__SESSION__SCENARIO_HPP_
