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
#include <random>

#include "oracles.hpp"
#include "tg/traj/mrm.hpp"
#include "tg/traj/trajectory.hpp"

using namespace tg::traj;

namespace
{
Trajectory reference()
{
  return build_trajectory(
    std::vector<Waypoint>{{0.0, 0.0}, {10.0, 0.0}, {18.0, 3.5}, {26.0, 4.5}, {34.0, 4.5}}, LimitSet{});
}

// Stop distance by explicit time stepping of dv/dt = -d, independent of the closed form.
double integrated_stop_distance(double v0, double decel)
{
  const double dt = 1e-6;
  double v = v0;
  double s = 0.0;
  while (v > 0.0) {
    const double step = std::min(dt, v / decel);
    const double v_next = v - decel * step;
    s += 0.5 * (v + v_next) * step;
    v = v_next;
  }
  return s;
}
}  // namespace

TEST_SUITE("mrm")
{
TEST_CASE("standstill gives a single-point plan")
{
  const auto traj = reference();
  const auto plan = generate_mrm(traj, 5.0, 0.0, traj.limits);
  REQUIRE(plan.points.size() == 1);
  CHECK(plan.points[0].s == doctest::Approx(5.0));
  CHECK(plan.v[0] == 0.0);
}

TEST_CASE("5 km/h with d_mrm = 2 stops in 0.482 m")
{
  const auto traj = reference();
  LimitSet l = traj.limits;
  l.d_mrm = 2.0;
  const double v0 = 5.0 / 3.6;
  const auto plan = generate_mrm(traj, 10.0, v0, l);
  CHECK(plan.stop_distance() == doctest::Approx(0.482).epsilon(0.002));
  CHECK(plan.stop_distance() == doctest::Approx(integrated_stop_distance(v0, 2.0)).epsilon(1e-4));
  CHECK(plan.v.back() == 0.0);
  CHECK_FALSE(plan.clamped);
  for (size_t i = 1; i < plan.v.size(); ++i) {
    CHECK(plan.v[i] <= plan.v[i - 1]);
    const double ds = plan.points[i].s - plan.points[i - 1].s;
    const double decel = (plan.v[i - 1] * plan.v[i - 1] - plan.v[i] * plan.v[i]) / (2.0 * ds);
    CHECK(decel <= l.d_mrm + 1e-6);
  }
}

TEST_CASE("plan stays on the reference path")
{
  const auto traj = reference();
  const auto plan = generate_mrm(traj, 12.3, 1.2, traj.limits);
  for (const auto & p : plan.points) {
    const auto ref = interpolate_point(traj.points, p.s);
    CHECK(std::hypot(ref.x - p.x, ref.y - p.y) < 1e-9);
  }
}

TEST_CASE("stop beyond the path end is clamped and flagged")
{
  const auto traj = reference();
  const auto plan = generate_mrm(traj, traj.length() - 0.1, 3.0, traj.limits);
  CHECK(plan.clamped);
  CHECK(plan.points.back().s == doctest::Approx(traj.points.back().s));
  CHECK(plan.v.back() == 0.0);
}

TEST_CASE("progress out of range")
{
  const auto traj = reference();
  try {
    generate_mrm(traj, traj.length() + 1.0, 1.0, traj.limits);
    FAIL("expected ProgressOutOfRange");
  } catch (const TrajError & e) {
    CHECK(e.code() == TrajError::Code::ProgressOutOfRange);
  }
  CHECK_THROWS_AS(generate_mrm(traj, -0.5, 1.0, traj.limits), TrajError);
  CHECK_THROWS_AS(generate_mrm(traj, 1.0, -1.0, traj.limits), TrajError);
}

TEST_CASE("regenerated plans advance with progress")
{
  const auto traj = reference();
  double prev = -1.0;
  for (size_t i = 0; i + 1 < traj.points.size(); i += 7) {
    const auto plan = generate_mrm(traj, traj.points[i].s, traj.v[i], traj.limits, traj.t[i]);
    CHECK(plan.generated_at_s >= prev);
    prev = plan.generated_at_s;
  }
}

TEST_CASE("property: MRM profile is dominated by the reference when d_mrm >= d_max")
{
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto wps = tg::oracle::random_waypoints(rng, 6);
    const auto l = tg::oracle::random_limits(rng);
    const auto traj = build_trajectory(wps, l);
    const size_t i = std::uniform_int_distribution<size_t>(0, traj.points.size() - 1)(rng);
    const auto plan = generate_mrm(traj, traj.points[i].s, traj.v[i], l);
    for (size_t k = 0; k < plan.points.size(); ++k) {
      CHECK(plan.v[k] <= speed_at(traj.points, traj.v, plan.points[k].s) + 1e-9);
    }
  }
}
}
