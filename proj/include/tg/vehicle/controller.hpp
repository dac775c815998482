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

#ifndef TG__VEHICLE__CONTROLLER_HPP_
#define TG__VEHICLE__CONTROLLER_HPP_

#include <span>

#include "tg/traj/types.hpp"
#include "tg/vehicle/model.hpp"

namespace tg::vehicle
{
/// Path plus speed samples, shared by Trajectory and MrmPlan.
struct Reference
{
  std::span<const traj::PathPoint> points;
  std::span<const double> v;
};

struct ControllerParams
{
  double lookahead_base{0.5};
  double lookahead_gain{0.8};
  double lookahead_min{1.0};
  double lookahead_max{6.0};
  double k_p{1.0};
  /// Multiplies the pure-pursuit steering angle. 1 in normal operation; other
  /// values exist for fault injection.
  double steer_gain{1.0};
};

struct Command
{
  double steer{0.0};
  double accel{0.0};
};

double lookahead_distance(double v, const ControllerParams & params);

/// Pure pursuit towards the path point `lookahead` ahead of `s_progress`;
/// beyond the path end the final tangent is extended.
double pure_pursuit_steer(
  const VehicleState & state, std::span<const traj::PathPoint> path, double s_progress,
  const VehicleParams & vehicle, const ControllerParams & params);

/// a_cmd = a_ff(s) + k_p (v_ref(s) - v_pred), with v_pred = v + a * lag the
/// speed one actuator lag ahead.
double speed_command(
  const VehicleState & state, const Reference & ref, double s_progress, const ControllerParams & params,
  double lag = 0.0);

Command controller_step(
  const VehicleState & state, const Reference & ref, double s_progress, const VehicleParams & vehicle,
  const ControllerParams & params);

/// Monotone arc-length progress by projecting the pose onto the path within
/// a window ahead of the previous progress.
class ProgressEstimator
{
public:
  static constexpr double kWindow = 3.0;

  void reset(double s = 0.0) { s_ = s; cross_track_ = 0.0; }

  /// Returns the updated progress; never decreases.
  double update(std::span<const traj::PathPoint> path, double x, double y);

  double s() const { return s_; }
  /// Distance from the pose to the path at the last projection.
  double cross_track() const { return cross_track_; }

private:
  double s_{0.0};
  double cross_track_{0.0};
};

}  // namespace tg::vehicle

#endif  // TG__VEHICLE__CONTROLLER_HPP_
