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

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tg/traj/trajectory.hpp"
#include "tg/traj/velocity_profile.hpp"

using namespace tg::traj;

namespace
{
const std::vector<Waypoint> kFigureOnePath{{0.0, 0.0},  {8.0, 0.2},  {16.0, 4.5}, {24.0, 6.0},
 {36.0, 6.0}, {44.0, 4.5}, {52.0, 0.5}, {60.0, 0.0}};

std::vector<PathPoint> straight_points(double length, double ds = 0.25)
{
  return resample_equidistant(fit_spline(std::vector<Waypoint>{{0.0, 0.0}, {length, 0.0}}), ds);
}
}  // namespace

TEST_SUITE("time_parameterize")
{
TEST_CASE("constant 1 m/s over 10 m takes 10 s")
{
  const auto pts = straight_points(10.0);
  const std::vector<double> v(pts.size(), 1.0);
  const auto t = time_parameterize(pts, v);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("two-point path")
{
  const std::vector<PathPoint> pts{{0, 0, 0, 0, 0.0}, {1, 0, 0, 0, 1.0}};
  const std::vector<double> v{0.5, 1.5};
  const auto t = time_parameterize(pts, v);
  REQUIRE(t.size() == 2);
  CHECK(t[0] == 0.0);
  CHECK(t[1] == doctest::Approx(2.0 * 1.0 / 2.0));
}

TEST_CASE("interior zero speed is rejected")
{
  const auto pts = straight_points(1.0);
  std::vector<double> v(pts.size(), 1.0);
  v[2] = 0.0;
  try {
    time_parameterize(pts, v);
    FAIL("expected InteriorZeroVelocity");
  } catch (const TrajError & e) {
    CHECK(e.code() == TrajError::Code::InteriorZeroVelocity);
  }
}

TEST_CASE("61.5 m at 5 km/h with 0.5 m/s^2 totals about 47 s")
{
  LimitSet l;
  l.v_max = 5.0 / 3.6;
  l.a_max = 0.5;
  l.d_max = 0.5;
  const auto pts = straight_points(61.5);
  const auto t = time_parameterize(pts, velocity_profile(pts, l));
  // Closed-form trapezoid: 61.5 / v + v / a = 47.06 s; jerk rounding adds a fraction.
  CHECK(t.back() == doctest::Approx(47.0).epsilon(0.02));
  CHECK(std::abs(t.back() - 51.2) <= 0.15 * 51.2);
}
}

TEST_SUITE("build_trajectory")
{
TEST_CASE("two waypoints 10 m apart")
{
  const auto traj = build_trajectory(std::vector<Waypoint>{{0.0, 0.0}, {10.0, 0.0}}, LimitSet{}, 7);
  CHECK(traj.id == 7);
  CHECK_NOTHROW(validate(traj));
  CHECK(traj.v.front() == 0.0);
  CHECK(traj.v.back() == 0.0);
  CHECK(traj.length() == doctest::Approx(10.0));
}

TEST_CASE("Figure-1-style path satisfies every invariant")
{
  const LimitSet l;
  const auto traj = build_trajectory(kFigureOnePath, l, 1);
  CHECK_NOTHROW(validate(traj));
  for (size_t i = 0; i < traj.points.size(); ++i) {
    CHECK(traj.v[i] <= std::min(l.v_max, std::sqrt(l.a_lat_max / std::max(std::abs(traj.points[i].curvature), 1e-6))) + 1e-9);
  }
  const auto f = tg::oracle::profile_feasibility(traj.points, traj.v);
  CHECK(f.max_jerk <= 1.05 * l.j_max);
  CHECK(f.total_time == doctest::Approx(traj.duration()).epsilon(1e-9));
}

TEST_CASE("hairpin beyond kappa_max still builds")
{
  const LimitSet l;
  const std::vector<Waypoint> hairpin{{0.0, 0.0}, {6.0, 0.0}, {8.0, 2.0}, {6.0, 4.0}, {0.0, 4.0}};
  const auto traj = build_trajectory(hairpin, l);
  CHECK_NOTHROW(validate(traj));
  CHECK(tg::oracle::max_three_point_curvature(traj.points) > l.kappa_max);
}

TEST_CASE("determinism")
{
  CHECK(build_trajectory(kFigureOnePath, LimitSet{}, 3) == build_trajectory(kFigureOnePath, LimitSet{}, 3));
}

TEST_CASE("speed and accel lookups")
{
  const auto traj = build_trajectory(kFigureOnePath, LimitSet{});
  CHECK(speed_at(traj.points, traj.v, 0.0) == 0.0);
  CHECK(speed_at(traj.points, traj.v, traj.length() + 1.0) == 0.0);
  const double s_mid = traj.points[100].s;
  CHECK(speed_at(traj.points, traj.v, s_mid) == doctest::Approx(traj.v[100]));
  const auto p = interpolate_point(traj.points, 0.5 * (traj.points[10].s + traj.points[11].s));
  CHECK(p.x == doctest::Approx(0.5 * (traj.points[10].x + traj.points[11].x)));
  CHECK(accel_at(traj.points, traj.v, 0.1) > 0.0);
}
}
