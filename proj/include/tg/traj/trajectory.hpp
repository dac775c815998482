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

#ifndef TG__TRAJ__TRAJECTORY_HPP_
#define TG__TRAJ__TRAJECTORY_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "tg/traj/resample.hpp"
#include "tg/traj/types.hpp"

namespace tg::traj
{
/// Trapezoidal integration: t[0] = 0, dt_i = 2 ds_i / (v_i + v_{i+1}).
/// Throws InteriorZeroVelocity when an interior speed is zero or an interval
/// has zero mean speed.
std::vector<double> time_parameterize(std::span<const PathPoint> points, std::span<const double> v);

/// fit_spline -> resample_equidistant -> velocity_profile(0, 0) -> time_parameterize.
Trajectory build_trajectory(
  std::span<const Waypoint> waypoints, const LimitSet & limits, std::uint64_t id = 0,
  double ds = kDefaultResampleSpacing);

/// Index i of the interval [s_i, s_{i+1}] containing s, clamped to the path.
size_t interval_at(std::span<const PathPoint> points, double s);

/// Linear interpolation of position and heading between path points; heading
/// takes the shorter arc. Curvature comes from the nearer sample.
PathPoint interpolate_point(std::span<const PathPoint> points, double s);

/// Speed at arc length s, linear in v^2 between samples (constant
/// acceleration per interval). Zero outside the path.
double speed_at(std::span<const PathPoint> points, std::span<const double> v, double s);

/// Interval acceleration (v_{i+1}^2 - v_i^2) / (2 ds) at arc length s.
double accel_at(std::span<const PathPoint> points, std::span<const double> v, double s);

/// Throws TrajError(InvalidArgument) naming the first violated Trajectory invariant.
void validate(const Trajectory & traj);

}  // namespace tg::traj

#endif  // TG__TRAJ__TRAJECTORY_HPP_
