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

#ifndef TG__TRAJ__MRM_HPP_
#define TG__TRAJ__MRM_HPP_

#include "tg/traj/types.hpp"

namespace tg::traj
{
/// Constant-deceleration stop along the remaining reference path:
/// v(s') = sqrt(max(0, v_now^2 - 2 d_mrm (s' - s_now))), ending at the stop
/// distance v_now^2 / (2 d_mrm). If the remaining path is shorter the plan
/// ends at the path end with v forced to 0 and `clamped` set.
///
/// Throws ProgressOutOfRange unless 0 <= s_now - s_start <= length (1e-9 slack)
/// and v_now >= 0.
MrmPlan generate_mrm(
  const Trajectory & traj, double s_now, double v_now, const LimitSet & limits,
  double generated_at_time = 0.0);

}  // namespace tg::traj

#endif  // TG__TRAJ__MRM_HPP_
