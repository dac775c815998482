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

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "tg/traj/resample.hpp"
#include "tg/traj/velocity_profile.hpp"

using namespace tg::traj;

namespace
{
std::vector<PathPoint> straight(double length, double ds = 0.25)
{
  return resample_equidistant(fit_spline(std::vector<Waypoint>{{0.0, 0.0}, {length, 0.0}}), ds);
}
}  // namespace

TEST_SUITE("velocity_profile")
{
TEST_CASE("100 m straight at 5 km/h: trapezoid with cruise at exactly v_max")
{
  LimitSet l;
  l.v_max = 5.0 / 3.6;
  l.a_max = 1.0;
  l.d_max = 1.0;
  const auto pts = straight(100.0);
  const auto v = velocity_profile(pts, l);
  CHECK(v.front() == 0.0);
  CHECK(v.back() == 0.0);
  CHECK(*std::max_element(v.begin(), v.end()) == l.v_max);
  // Cruise: the middle of the path runs at v_max.
  for (size_t i = pts.size() / 4; i < 3 * pts.size() / 4; ++i) {
    CHECK(v[i] == l.v_max);
  }
  // Accel ramp is non-decreasing, decel ramp non-increasing.
  for (size_t i = 1; i < pts.size() / 4; ++i) CHECK(v[i] >= v[i - 1]);
  for (size_t i = 3 * pts.size() / 4; i + 1 < pts.size(); ++i) CHECK(v[i + 1] <= v[i]);
}

TEST_CASE("short path gives a triangular profile below v_max")
{
  LimitSet l;
  l.v_max = 5.0;
  l.a_max = 0.5;
  l.d_max = 0.5;
  const auto pts = straight(4.0);  // < 2 * v_max^2 / (2a) = 50 m
  const auto v = velocity_profile(pts, l);
  const double peak = *std::max_element(v.begin(), v.end());
  CHECK(peak < l.v_max);
  CHECK(peak > 0.0);
  const auto it = std::max_element(v.begin(), v.end());
  CHECK(std::is_sorted(v.begin(), it + 1));
  CHECK(std::is_sorted(it, v.end(), std::greater<>()));
}

TEST_CASE("boundary speeds are respected")
{
  LimitSet l;
  const auto pts = straight(30.0);
  const auto v = velocity_profile(pts, l, 0.0, 0.0);
  CHECK(v.front() == 0.0);
  CHECK(v.back() == 0.0);
  const auto w = velocity_profile(pts, l, 1.0, 0.5);
  CHECK(w.front() == doctest::Approx(1.0));
  CHECK(w.back() <= 0.5);
}

TEST_CASE("empty path")
{
  try {
    velocity_profile(std::vector<PathPoint>{}, LimitSet{});
    FAIL("expected EmptyPath");
  } catch (const TrajError & e) {
    CHECK(e.code() == TrajError::Code::EmptyPath);
  }
}

TEST_CASE("invalid limits")
{
  LimitSet l;
  l.v_max = 12.0;
  CHECK_THROWS_AS(velocity_profile(straight(10.0), l), TrajError);
  l = LimitSet{};
  l.d_mrm = 0.1;
  CHECK_THROWS_AS(velocity_profile(straight(10.0), l), TrajError);
}

TEST_CASE("curvature cap slows the vehicle in bends")
{
  LimitSet l;
  l.v_max = 8.0;
  l.a_lat_max = 1.0;
  const std::vector<Waypoint> wps{{0.0, 0.0}, {20.0, 0.0}, {25.0, 5.0}, {25.0, 25.0}};
  const auto pts = resample_equidistant(fit_spline(wps));
  const auto v = velocity_profile(pts, l);
  for (size_t i = 0; i < pts.size(); ++i) {
    CHECK(v[i] * v[i] * std::abs(pts[i].curvature) <= l.a_lat_max + 1e-6);
  }
}

TEST_CASE("finite-difference oracle: default limits on a bend")
{
  const LimitSet l;
  const std::vector<Waypoint> wps{{0.0, 0.0},  {8.0, 0.2},  {16.0, 4.5}, {24.0, 6.0},
 {36.0, 6.0}, {44.0, 4.5}, {52.0, 0.5}, {60.0, 0.0}};
  const auto pts = resample_equidistant(fit_spline(wps));
  const auto v = velocity_profile(pts, l);
  const auto f = tg::oracle::profile_feasibility(pts, v);
  CHECK(f.max_accel <= 1.05 * std::max(l.a_max, l.d_max));
  CHECK(f.max_jerk <= 1.05 * l.j_max);
  CHECK(f.max_lateral <= l.a_lat_max + 1e-6);
}

TEST_CASE("property: random paths and limits pass the feasibility oracle")
{
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<size_t> count(3, 12);
  for (int trial = 0; trial < 60; ++trial) {
    const auto wps = tg::oracle::random_waypoints(rng, count(rng));
    const auto l = tg::oracle::random_limits(rng);
    const auto pts = resample_equidistant(fit_spline(wps));
    const auto v = velocity_profile(pts, l);
    const auto f = tg::oracle::profile_feasibility(pts, v);
    CAPTURE(trial);
    CHECK(f.max_accel <= 1.05 * std::max(l.a_max, l.d_max));
    CHECK(f.max_jerk <= 1.05 * l.j_max);
    CHECK(f.max_lateral <= l.a_lat_max + 1e-6);
    for (size_t i = 1; i + 1 < v.size(); ++i) CHECK(v[i] > 0.0);
  }
}

TEST_CASE("determinism: identical inputs give bit-identical profiles")
{
  std::mt19937_64 rng(5);
  const auto wps = tg::oracle::random_waypoints(rng, 8);
  const auto l = tg::oracle::random_limits(rng);
  const auto pts = resample_equidistant(fit_spline(wps));
  CHECK(velocity_profile(pts, l) == velocity_profile(pts, l));
}
}
