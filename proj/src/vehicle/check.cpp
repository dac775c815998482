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

#include "tg/vehicle/check.hpp"

#include <algorithm>
#include <cmath>

#include "tg/traj/trajectory.hpp"

namespace tg::vehicle
{
namespace
{
bool arrays_aligned(const traj::Trajectory & t)
{
  return t.points.size() >= 2 && t.v.size() == t.points.size() && t.t.size() == t.points.size();
}

bool integrity_ok(const traj::Trajectory & traj, std::optional<Vec2> vehicle_position)
{
  try {
    traj::validate(traj);
    traj::validate(traj.limits);
  } catch (const traj::TrajError &) {
    return false;
  }
  const auto & pts = traj.points;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const double ds = pts[i + 1].s - pts[i].s;
    const double chord = std::hypot(pts[i + 1].x - pts[i].x, pts[i + 1].y - pts[i].y);
    // Chords of a smooth path are marginally shorter than the arc.
    if (std::abs(chord - ds) > 0.02 * ds + 1e-6) {
      return false;
    }
    const double dt = 2.0 * ds / (traj.v[i] + traj.v[i + 1]);
    if (std::abs((traj.t[i + 1] - traj.t[i]) - dt) > 1e-6 * std::max(1.0, dt)) {
      return false;
    }
  }
  if (vehicle_position && distance(*vehicle_position, Vec2{pts.front().x, pts.front().y}) > kStartTolerance) {
    return false;
  }
  return true;
}

bool curvature_ok(const traj::Trajectory & traj, const VehicleParams & params, const traj::LimitSet & limits)
{
  const double limit = std::min(limits.kappa_max, params.kappa_max());
  return std::all_of(traj.points.begin(), traj.points.end(),
                     [limit](const traj::PathPoint & p) { return std::abs(p.curvature) <= limit + 1e-9; });
}

bool velocity_ok(const traj::Trajectory & traj, const traj::LimitSet & limits)
{
  for (size_t i = 0; i < traj.points.size(); ++i) {
    if (!(traj.v[i] <= traj::speed_cap(limits, traj.points[i].curvature) + 1e-9)) {
      return false;
    }
  }
  return true;
}

// Same finite-difference reading as the profile generator's contract:
// a = dv/dt per interval, j = da/dt between interval midpoints.
bool profile_ok(const traj::Trajectory & traj, const traj::LimitSet & limits)
{
  const double tol = 1.0 + kFeasibilityTolerance;
  const auto & pts = traj.points;
  double prev_a = 0.0;
  double prev_mid = 0.0;
  double t = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    const double dt = 2.0 * (pts[i + 1].s - pts[i].s) / (traj.v[i] + traj.v[i + 1]);
    const double a = (traj.v[i + 1] - traj.v[i]) / dt;
    const double mid = t + 0.5 * dt;
    if (a > limits.a_max * tol || -a > limits.d_max * tol) {
      return false;
    }
    if (i > 0 && std::abs((a - prev_a) / (mid - prev_mid)) > limits.j_max * tol) {
      return false;
    }
    prev_a = a;
    prev_mid = mid;
    t += dt;
  }
  return true;
}

VehicleState pose_at(const traj::PathPoint & p) { return VehicleState{p.x, p.y, p.heading, 0, 0, 0, 0}; }

bool bounds_ok(const traj::Trajectory & traj, const VehicleParams & params, const World & world)
{
  if (world.bounds.empty()) {
    return true;
  }
  for (const auto & p : traj.points) {
    for (const auto & corner : footprint(pose_at(p), params)) {
      if (!point_in_polygon(corner, world.bounds)) {
        return false;
      }
    }
  }
  return true;
}

bool obstacles_ok(const traj::Trajectory & traj, const VehicleParams & params, const World & world)
{
  VehicleParams inflated = params;
  inflated.width += 2.0 * kObstacleMargin;
  inflated.length += 2.0 * kObstacleMargin;
  for (const auto & p : traj.points) {
    const auto body = footprint(pose_at(p), inflated);
    for (const auto & obstacle : world.obstacles) {
      if (polygons_intersect(body, obstacle)) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

std::string_view to_string(CheckReason reason)
{
  switch (reason) {
    case CheckReason::IntegrityError: return "IntegrityError";
    case CheckReason::CurvatureExceeded: return "CurvatureExceeded";
    case CheckReason::VelocityExceeded: return "VelocityExceeded";
    case CheckReason::ProfileInfeasible: return "ProfileInfeasible";
    case CheckReason::OffScenarioBounds: return "OffScenarioBounds";
    case CheckReason::ObstacleConflict: return "ObstacleConflict";
  }
  return "?";
}

std::vector<std::string> CheckReport::reason_names() const
{
  std::vector<std::string> out;
  for (auto r : reasons) out.emplace_back(to_string(r));
  return out;
}

CheckReport check_trajectory(
  const traj::Trajectory & traj, const VehicleParams & params, const World & world,
  const traj::LimitSet & vehicle_limits, std::optional<Vec2> vehicle_position)
{
  CheckReport report;
  if (!arrays_aligned(traj)) {
    report.reasons.push_back(CheckReason::IntegrityError);
    return report;
  }
  const bool finite = std::all_of(traj.points.begin(), traj.points.end(), [](const auto & p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.heading) && std::isfinite(p.curvature) &&
           std::isfinite(p.s);
  }) && std::all_of(traj.v.begin(), traj.v.end(), [](double v) { return std::isfinite(v) && v >= 0.0; });
  if (!finite) {
    report.reasons.push_back(CheckReason::IntegrityError);
    return report;
  }
  if (!integrity_ok(traj, vehicle_position)) report.reasons.push_back(CheckReason::IntegrityError);
  if (!curvature_ok(traj, params, vehicle_limits)) report.reasons.push_back(CheckReason::CurvatureExceeded);
  if (!velocity_ok(traj, vehicle_limits)) report.reasons.push_back(CheckReason::VelocityExceeded);
  if (!profile_ok(traj, vehicle_limits)) report.reasons.push_back(CheckReason::ProfileInfeasible);
  if (!bounds_ok(traj, params, world)) report.reasons.push_back(CheckReason::OffScenarioBounds);
  if (!obstacles_ok(traj, params, world)) report.reasons.push_back(CheckReason::ObstacleConflict);
  return report;
}

}  // namespace tg::vehicle
