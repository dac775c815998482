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

#ifndef TG__TRAJ__VELOCITY_PROFILE_HPP_
#define TG__TRAJ__VELOCITY_PROFILE_HPP_

#include <span>
#include <vector>

#include "tg/traj/types.hpp"

namespace tg::traj
{
/// Per-point speed for a path under `limits`, starting at `v_start` and ending
/// at `v_end` (both treated as upper bounds).
///
/// Built in three stages over the squared-speed profile e = v^2 / 2:
///   1. pointwise cap min(v_max, sqrt(a_lat_max / |kappa|)),
///   2. forward (a_max) and backward (d_max) passes,
///   3. jerk relaxation: wherever consecutive interval accelerations differ by
///      more than j_max times their mean interval duration, the offending
///      corner is lowered (concave corners lower the corner point, convex ones
///      lower the higher neighbour), followed by a repair forward/backward
///      pass; repeated until no corner exceeds j_max.
/// Speeds only ever decrease, so the cap and accel bounds from stages 1-2
/// survive stage 3.
///
/// Throws TrajError(EmptyPath) on an empty path, InvalidLimits on bad limits.
std::vector<double> velocity_profile(
  std::span<const PathPoint> points, const LimitSet & limits, double v_start = 0.0,
  double v_end = 0.0);

}  // namespace tg::traj

#endif  // TG__TRAJ__VELOCITY_PROFILE_HPP_
