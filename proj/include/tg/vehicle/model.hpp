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

#ifndef TG__VEHICLE__MODEL_HPP_
#define TG__VEHICLE__MODEL_HPP_

#include "tg/geometry.hpp"

namespace tg::vehicle
{
struct VehicleParams
{
  double wheelbase{2.7};
  double max_steer{0.5};
  /// First-order time constant of both actuators, seconds. Zero means ideal.
  double actuator_lag{0.05};
  double width{1.8};
  double length{4.5};

  /// tan(max_steer) / wheelbase.
  double kappa_max() const;
};

/// Throws std::invalid_argument unless all fields are positive (lag may be zero).
void validate(const VehicleParams & params);

/// Pose is the rear-axle center. `steer` and `a` are the actuator outputs.
struct VehicleState
{
  double x{0.0};
  double y{0.0};
  double psi{0.0};
  double v{0.0};
  double a{0.0};
  double steer{0.0};
  double t{0.0};
  bool operator==(const VehicleState &) const = default;
};

inline constexpr double kControlPeriod = 0.01;

/// One explicit Euler step of the kinematic bicycle with first-order actuator
/// lag. Steering is clamped to +-max_steer and speed to >= 0.
VehicleState vehicle_step(const VehicleState & state, double steer_cmd, double accel_cmd, double dt, const VehicleParams & params);

/// Body rectangle; the rear axle sits wheelbase/2 behind the box center.
Polygon footprint(const VehicleState & state, const VehicleParams & params);

}  // namespace tg::vehicle

#endif  // TG__VEHICLE__MODEL_HPP_
