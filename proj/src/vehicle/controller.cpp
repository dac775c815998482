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

#include "tg/vehicle/controller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tg/traj/trajectory.hpp"

namespace tg::vehicle
{
double lookahead_distance(double v, const ControllerParams & p)
{
  return std::clamp(p.lookahead_base + p.lookahead_gain * v, p.lookahead_min, p.lookahead_max);
}

namespace
{
Vec2 point_along(std::span<const traj::PathPoint> path, double s)
{
  const auto & last = path.back();
  if (s <= last.s) {
    const auto p = traj::interpolate_point(path, s);
    return {p.x, p.y};
  }
  const double extra = s - last.s;
  return {last.x + extra * std::cos(last.heading), last.y + extra * std::sin(last.heading)};
}
}  // namespace

double pure_pursuit_steer(
  const VehicleState & state, std::span<const traj::PathPoint> path, double s_progress,
  const VehicleParams & vehicle, const ControllerParams & params)
{
  if (path.empty()) {
    return 0.0;
  }
  const Vec2 target = point_along(path, s_progress + lookahead_distance(state.v, params));
  const double dx = target.x - state.x;
  const double dy = target.y - state.y;
  const double ld = std::hypot(dx, dy);
  if (ld < 1e-6) {
    return 0.0;
  }
  // Bearing of the target in the vehicle frame.
  const double alpha = std::atan2(-std::sin(state.psi) * dx + std::cos(state.psi) * dy,
                                  std::cos(state.psi) * dx + std::sin(state.psi) * dy);
  const double steer = std::atan2(2.0 * vehicle.wheelbase * std::sin(alpha), ld);
  return std::clamp(params.steer_gain * steer, -vehicle.max_steer, vehicle.max_steer);
}

double speed_command(
  const VehicleState & state, const Reference & ref, double s, const ControllerParams & p, double lag)
{
  if (ref.points.empty()) {
    return 0.0;
  }
  const double v_ref = traj::speed_at(ref.points, ref.v, s);
  const double a_ff = ref.points.size() >= 2 ? traj::accel_at(ref.points, ref.v, s) : 0.0;
  return a_ff + p.k_p * (v_ref - (state.v + state.a * lag));
}

Command controller_step(
  const VehicleState & state, const Reference & ref, double s, const VehicleParams & vehicle,
  const ControllerParams & params)
{
  return {
    pure_pursuit_steer(state, ref.points, s, vehicle, params),
    speed_command(state, ref, s, params, vehicle.actuator_lag)};
}

double ProgressEstimator::update(std::span<const traj::PathPoint> path, double x, double y)
{
  if (path.size() < 2) {
    cross_track_ = path.empty() ? 0.0 : std::hypot(x - path[0].x, y - path[0].y);
    return s_;
  }
  const Vec2 p{x, y};
  size_t i = traj::interval_at(path, s_);
  double best_d = std::numeric_limits<double>::infinity();
  double best_s = s_;
  for (; i + 1 < path.size() && path[i].s <= s_ + kWindow; ++i) {
    const Vec2 a{path[i].x, path[i].y};
    const Vec2 b{path[i + 1].x, path[i + 1].y};
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    double u = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    // The end segments extend as rays so the error stays lateral near the ends.
    if (i > 0) u = std::max(u, 0.0);
    if (i + 2 < path.size()) u = std::min(u, 1.0);
    const double d = distance(p, a + ab * u);
    if (d < best_d) {
      best_d = d;
      best_s = path[i].s + std::clamp(u, 0.0, 1.0) * (path[i + 1].s - path[i].s);
    }
  }
  cross_track_ = best_d;
  s_ = std::max(s_, best_s);
  return s_;
}

}  // namespace tg::vehicle
