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

// Test-only reference computations. Nothing here calls into the code paths it checks
// beyond plain evaluation of the object under test.
#ifndef TG__TESTS__ORACLES_HPP_
#define TG__TESTS__ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <utility>
#include <vector>

#include "tg/traj/types.hpp"

namespace tg::oracle
{
/// Central second difference; exact for cubics, so truncation error vanishes
/// when the stencil stays inside one polynomial piece.
inline double second_difference(const std::function<double(double)> & f, double c, double h)
{
  return (f(c + h) - 2.0 * f(c) + f(c - h)) / (h * h);
}

/// One-sided estimate of f'' at `knot`, from stencils entirely on one side,
/// linearly extrapolated (f'' is linear on a cubic piece). `side` is +1 or -1.
inline double one_sided_second_derivative(
  const std::function<double(double)> & f, double knot, double side, double offset, double h)
{
  const double d1 = offset + h;
  const double d2 = 2.0 * d1;
  const double e1 = second_difference(f, knot + side * d1, h);
  const double e2 = second_difference(f, knot + side * d2, h);
  return e1 + (e1 - e2) * d1 / (d2 - d1);
}

/// Curvature of the circle through three points (signed, CCW positive).
inline double three_point_curvature(double x0, double y0, double x1, double y1, double x2, double y2)
{
  const double a = std::hypot(x1 - x0, y1 - y0);
  const double b = std::hypot(x2 - x1, y2 - y1);
  const double c = std::hypot(x2 - x0, y2 - y0);
  const double cr = (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0);
  if (a * b * c == 0.0) return 0.0;
  return 2.0 * cr / (a * b * c);
}

inline double max_three_point_curvature(const std::vector<traj::PathPoint> & pts)
{
  double best = 0.0;
  for (size_t i = 1; i + 1 < pts.size(); ++i) {
    best = std::max(
      best, std::abs(three_point_curvature(
              pts[i - 1].x, pts[i - 1].y, pts[i].x, pts[i].y, pts[i + 1].x, pts[i + 1].y)));
  }
  return best;
}

struct Feasibility
{
  double max_accel{0.0};      // max |a| over intervals
  double max_jerk{0.0};       // max |j| over interior corners
  double max_lateral{0.0};    // max v^2 |kappa|
  double total_time{0.0};
};

/// Recomputes time from (s, v) by trapezoidal integration, then a = dv/dt per
/// interval and j = da/dt between consecutive intervals.
inline Feasibility profile_feasibility(const std::vector<traj::PathPoint> & pts, const std::vector<double> & v)
{
  Feasibility f;
  const size_t n = pts.size();
  std::vector<double> dt(n - 1), acc(n - 1), mid(n - 1);
  double t = 0.0;
  for (size_t i = 0; i + 1 < n; ++i) {
    const double ds = pts[i + 1].s - pts[i].s;
    dt[i] = 2.0 * ds / (v[i] + v[i + 1]);
    acc[i] = (v[i + 1] - v[i]) / dt[i];
    mid[i] = t + 0.5 * dt[i];
    t += dt[i];
    f.max_accel = std::max(f.max_accel, std::abs(acc[i]));
  }
  f.total_time = t;
  for (size_t i = 0; i + 2 < n; ++i) {
    f.max_jerk = std::max(f.max_jerk, std::abs((acc[i + 1] - acc[i]) / (mid[i + 1] - mid[i])));
  }
  for (size_t i = 0; i < n; ++i) {
    f.max_lateral = std::max(f.max_lateral, v[i] * v[i] * std::abs(pts[i].curvature));
  }
  return f;
}

/// Random walk of `count` waypoints, steps 2..10 m, turns within +-70 deg.
inline std::vector<traj::Waypoint> random_waypoints(std::mt19937_64 & rng, size_t count)
{
  std::uniform_real_distribution<double> step(2.0, 10.0);
  std::uniform_real_distribution<double> turn(-1.2, 1.2);
  std::uniform_real_distribution<double> origin(-50.0, 50.0);
  std::vector<traj::Waypoint> wps{{origin(rng), origin(rng)}};
  double heading = turn(rng) * 2.5;
  for (size_t i = 1; i < count; ++i) {
    heading += turn(rng);
    const double d = step(rng);
    wps.push_back({wps.back().x + d * std::cos(heading), wps.back().y + d * std::sin(heading)});
  }
  return wps;
}

inline traj::LimitSet random_limits(std::mt19937_64 & rng)
{
  auto u = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  traj::LimitSet l;
  l.v_max = u(0.5, 10.0);
  l.a_max = u(0.2, 3.0);
  l.d_max = u(0.2, 4.0);
  l.a_lat_max = u(0.5, 4.0);
  l.j_max = u(0.2, 5.0);
  l.kappa_max = u(0.1, 1.0);
  l.d_mrm = l.d_max * u(1.0, 3.0);
  return l;
}

inline double polyline_length(const std::vector<double> & xs, const std::vector<double> & ys)
{
  double len = 0.0;
  for (size_t i = 1; i < xs.size(); ++i) len += std::hypot(xs[i] - xs[i - 1], ys[i] - ys[i - 1]);
  return len;
}


using Corner = std::pair<double, double>;

/// Vehicle rectangle from the rear-axle pose; the body center sits
/// `center_ahead` metres forward along the heading.
inline std::vector<Corner> body_rectangle(
  double x, double y, double psi, double length, double width, double center_ahead)
{
  const double c = std::cos(psi);
  const double s = std::sin(psi);
  const double cx = x + center_ahead * c;
  const double cy = y + center_ahead * s;
  std::vector<Corner> out;
  for (auto [l, w] : {std::pair{1, 1}, std::pair{-1, 1}, std::pair{-1, -1}, std::pair{1, -1}}) {
    const double dx = 0.5 * length * l;
    const double dy = 0.5 * width * w;
    out.emplace_back(cx + dx * c - dy * s, cy + dx * s + dy * c);
  }
  return out;
}

/// Separating-axis test for two convex polygons; touching counts as overlap.
inline bool convex_overlap(const std::vector<Corner> & a, const std::vector<Corner> & b)
{
  auto separated_along_edges_of = [](const std::vector<Corner> & p, const std::vector<Corner> & q) {
    for (size_t i = 0; i < p.size(); ++i) {
      const auto [x0, y0] = p[i];
      const auto [x1, y1] = p[(i + 1) % p.size()];
      const double nx = y1 - y0;
      const double ny = x0 - x1;
      double pmin = INFINITY, pmax = -INFINITY, qmin = INFINITY, qmax = -INFINITY;
      for (auto [x, y] : p) {
        pmin = std::min(pmin, nx * x + ny * y);
        pmax = std::max(pmax, nx * x + ny * y);
      }
      for (auto [x, y] : q) {
        qmin = std::min(qmin, nx * x + ny * y);
        qmax = std::max(qmax, nx * x + ny * y);
      }
      if (pmax < qmin || qmax < pmin) return true;
    }
    return false;
  };
  return !separated_along_edges_of(a, b) && !separated_along_edges_of(b, a);
}

}  // namespace tg::oracle

#endif  // TG__TESTS__ORACLES_HPP_
