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

#ifndef TG__VEHICLE__CHECK_HPP_
#define TG__VEHICLE__CHECK_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tg/geometry.hpp"
#include "tg/traj/types.hpp"
#include "tg/vehicle/model.hpp"

namespace tg::vehicle
{
/// Static scene known onboard.
struct World
{
  Polygon bounds;
  std::vector<Polygon> obstacles;
};

enum class CheckReason {
  IntegrityError,
  CurvatureExceeded,
  VelocityExceeded,
  ProfileInfeasible,
  OffScenarioBounds,
  ObstacleConflict,
};

std::string_view to_string(CheckReason reason);

struct CheckReport
{
  std::vector<CheckReason> reasons;
  bool ok() const { return reasons.empty(); }
  std::vector<std::string> reason_names() const;
};

inline constexpr double kObstacleMargin = 0.2;
inline constexpr double kStartTolerance = 1.0;
inline constexpr double kFeasibilityTolerance = 0.05;

/// Onboard acceptance of an operator trajectory, against the vehicle's own
/// limits. Each failing category appears once, in enum order.
CheckReport check_trajectory(
  const traj::Trajectory & traj, const VehicleParams & params, const World & world,
  const traj::LimitSet & vehicle_limits, std::optional<Vec2> vehicle_position = std::nullopt);

}  // namespace tg::vehicle

#endif  // TG__VEHICLE__CHECK_HPP_
