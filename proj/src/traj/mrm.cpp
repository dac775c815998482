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

#include "tg/traj/mrm.hpp"

#include <algorithm>
#include <cmath>

#include "tg/traj/trajectory.hpp"

namespace tg::traj
{
MrmPlan generate_mrm(
  const Trajectory & traj, double s_now, double v_now, const LimitSet & limits,
  double generated_at_time)
{
  if (traj.points.empty()) {
    throw TrajError(TrajError::Code::EmptyPath, "MRM on an empty trajectory");
  }
  const double s_begin = traj.points.front().s;
  const double s_end = traj.points.back().s;
  constexpr double kSlack = 1e-9;
  if (!std::isfinite(s_now) || s_now < s_begin - kSlack || s_now > s_end + kSlack ||
      !std::isfinite(v_now) || v_now < 0.0) {
    throw TrajError(TrajError::Code::ProgressOutOfRange, "MRM progress outside the reference path");
  }
  s_now = std::clamp(s_now, s_begin, s_end);

  MrmPlan plan;
  plan.generated_at_s = s_now;
  plan.generated_at_time = generated_at_time;
  plan.points.push_back(interpolate_point(traj.points, s_now));
  plan.v.push_back(v_now);
  if (v_now == 0.0) {
    return plan;
  }

  const double decel = limits.d_mrm;
  const double stop_distance = v_now * v_now / (2.0 * decel);
  double s_stop = s_now + stop_distance;
  if (s_stop > s_end) {
    s_stop = s_end;
    plan.clamped = true;
  }
  const auto speed = [&](double s) {
    return std::sqrt(std::max(0.0, v_now * v_now - 2.0 * decel * (s - s_now)));
  };
  for (const auto & p : traj.points) {
    if (p.s > s_now && p.s < s_stop) {
      plan.points.push_back(p);
      plan.v.push_back(speed(p.s));
    }
  }
  if (s_stop > plan.points.back().s) {
    plan.points.push_back(interpolate_point(traj.points, s_stop));
    plan.v.push_back(0.0);
  }
  plan.v.back() = 0.0;
  return plan;
}

}  // namespace tg::traj
