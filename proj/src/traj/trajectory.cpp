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

#include "tg/traj/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tg/geometry.hpp"
#include "tg/traj/spline.hpp"
#include "tg/traj/velocity_profile.hpp"

namespace tg::traj
{
std::vector<double> time_parameterize(std::span<const PathPoint> points, std::span<const double> v)
{
  if (points.empty()) {
    throw TrajError(TrajError::Code::EmptyPath, "time parameterization of an empty path");
  }
  if (points.size() != v.size()) {
    throw TrajError(TrajError::Code::InvalidArgument, "points and speeds differ in length");
  }
  std::vector<double> t(points.size(), 0.0);
  for (size_t i = 1; i + 1 < v.size(); ++i) {
    if (!(v[i] > 0.0)) {
      throw TrajError(
        TrajError::Code::InteriorZeroVelocity, "zero speed at interior point " + std::to_string(i));
    }
  }
  for (size_t i = 0; i + 1 < points.size(); ++i) {
    const double mean2 = v[i] + v[i + 1];
    if (!(mean2 > 0.0)) {
      throw TrajError(TrajError::Code::InteriorZeroVelocity, "interval with zero mean speed");
    }
    t[i + 1] = t[i] + 2.0 * (points[i + 1].s - points[i].s) / mean2;
  }
  return t;
}

Trajectory build_trajectory(
  std::span<const Waypoint> waypoints, const LimitSet & limits, std::uint64_t id, double ds)
{
  validate(limits);
  const SplineModel spline = fit_spline(waypoints);
  Trajectory traj;
  traj.id = id;
  traj.limits = limits;
  traj.points = resample_equidistant(spline, ds);
  traj.v = velocity_profile(traj.points, limits, 0.0, 0.0);
  traj.t = time_parameterize(traj.points, traj.v);
  return traj;
}

size_t interval_at(std::span<const PathPoint> points, double s)
{
  if (points.size() < 2) {
    return 0;
  }
  const auto it = std::upper_bound(
    points.begin(), points.end(), s, [](double value, const PathPoint & p) { return value < p.s; });
  const auto idx = static_cast<size_t>(std::distance(points.begin(), it));
  return std::clamp<size_t>(idx == 0 ? 0 : idx - 1, 0, points.size() - 2);
}

PathPoint interpolate_point(std::span<const PathPoint> points, double s)
{
  if (points.empty()) {
    throw TrajError(TrajError::Code::EmptyPath, "interpolation on an empty path");
  }
  if (points.size() == 1 || s <= points.front().s) {
    return points.front();
  }
  if (s >= points.back().s) {
    return points.back();
  }
  const size_t i = interval_at(points, s);
  const PathPoint & a = points[i];
  const PathPoint & b = points[i + 1];
  const double r = (s - a.s) / (b.s - a.s);
  PathPoint p;
  p.x = a.x + r * (b.x - a.x);
  p.y = a.y + r * (b.y - a.y);
  p.heading = normalize_angle(a.heading + r * normalize_angle(b.heading - a.heading));
  p.curvature = r < 0.5 ? a.curvature : b.curvature;
  p.s = s;
  return p;
}

double speed_at(std::span<const PathPoint> points, std::span<const double> v, double s)
{
  if (points.empty() || s < points.front().s || s > points.back().s) {
    return 0.0;
  }
  if (points.size() == 1) {
    return v.front();
  }
  const size_t i = interval_at(points, s);
  const double r = std::clamp((s - points[i].s) / (points[i + 1].s - points[i].s), 0.0, 1.0);
  const double e = (1.0 - r) * v[i] * v[i] + r * v[i + 1] * v[i + 1];
  return std::sqrt(std::max(0.0, e));
}

double accel_at(std::span<const PathPoint> points, std::span<const double> v, double s)
{
  if (points.size() < 2 || s < points.front().s || s > points.back().s) {
    return 0.0;
  }
  const size_t i = interval_at(points, s);
  return (v[i + 1] * v[i + 1] - v[i] * v[i]) / (2.0 * (points[i + 1].s - points[i].s));
}

void validate(const Trajectory & traj)
{
  const auto fail = [](const std::string & what) {
    throw TrajError(TrajError::Code::InvalidArgument, "trajectory invariant: " + what);
  };
  const size_t n = traj.points.size();
  if (n < 2 || traj.v.size() != n || traj.t.size() != n) fail("array sizes");
  if (traj.v.front() != 0.0 || traj.v.back() != 0.0) fail("must start and end at standstill");
  if (traj.t.front() != 0.0) fail("t[0] must be 0");
  for (size_t i = 0; i < n; ++i) {
    const auto & p = traj.points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.heading) ||
        !std::isfinite(p.curvature) || !std::isfinite(p.s) || !std::isfinite(traj.v[i]) ||
        !std::isfinite(traj.t[i])) {
      fail("non-finite value");
    }
    if (traj.v[i] < 0.0 || traj.v[i] > speed_cap(traj.limits, p.curvature) + 1e-9) fail("speed cap");
    if (i > 0 && !(p.s > traj.points[i - 1].s)) fail("s must increase");
    if (i > 0 && !(traj.t[i] > traj.t[i - 1])) fail("t must increase");
  }
}

}  // namespace tg::traj
