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

#ifndef TG__TRAJ__SPLINE_HPP_
#define TG__TRAJ__SPLINE_HPP_

#include <span>
#include <vector>

#include "tg/geometry.hpp"
#include "tg/traj/types.hpp"

namespace tg::traj
{
/// Waypoints closer than this to the previously kept one are merged.
inline constexpr double kWaypointMergeDistance = 0.5;

// NOTE: on knot interval i with t = u - u_i:
//   f(u) = a_i + b_i t + c_i t^2 + d_i t^3
class CubicSpline1D
{
public:
  CubicSpline1D() = default;
  /// Natural boundary conditions; `knots` strictly increasing, same size as `values`.
  CubicSpline1D(std::vector<double> knots, std::vector<double> values);

  double value(double u) const;
  double first_derivative(double u) const;
  double second_derivative(double u) const;

  std::span<const double> knots() const { return knots_; }

private:
  size_t segment(double u) const;

  std::vector<double> knots_;
  std::vector<double> a_, b_, c_, d_;
};

/// Planar C2 interpolant x(u), y(u) over the cumulative chord-length parameter u.
class SplineModel
{
public:
  SplineModel(std::vector<double> knots, const std::vector<Waypoint> & points);

  Vec2 position(double u) const { return {x_.value(u), y_.value(u)}; }
  Vec2 first_derivative(double u) const { return {x_.first_derivative(u), y_.first_derivative(u)}; }
  Vec2 second_derivative(double u) const
  {
    return {x_.second_derivative(u), y_.second_derivative(u)};
  }

  /// Signed curvature (x'y'' - y'x'') / (x'^2 + y'^2)^(3/2).
  double curvature(double u) const;
  double heading(double u) const;

  std::span<const double> knots() const { return x_.knots(); }
  const std::vector<Waypoint> & waypoints() const { return waypoints_; }
  double parameter_end() const { return knots().back(); }

private:
  CubicSpline1D x_;
  CubicSpline1D y_;
  std::vector<Waypoint> waypoints_;
};

/// Drops waypoints closer than kWaypointMergeDistance to the last kept one.
/// The final waypoint always survives (it replaces its too-close predecessor).
std::vector<Waypoint> merge_close_waypoints(std::span<const Waypoint> waypoints);

/// Throws TrajError: NonFinite, TooFewWaypoints (< 2 distinct after merging).
SplineModel fit_spline(std::span<const Waypoint> waypoints);

}  // namespace tg::traj

#endif  // TG__TRAJ__SPLINE_HPP_
