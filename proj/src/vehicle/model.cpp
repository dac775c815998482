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

#include "tg/vehicle/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tg::vehicle
{
double VehicleParams::kappa_max() const { return std::tan(max_steer) / wheelbase; }

void validate(const VehicleParams & p)
{
  for (double v : {p.wheelbase, p.max_steer, p.width, p.length}) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw std::invalid_argument("vehicle parameters must be positive");
    }
  }
  if (!std::isfinite(p.actuator_lag) || p.actuator_lag < 0.0) {
    throw std::invalid_argument("actuator lag must be >= 0");
  }
  if (p.max_steer >= M_PI / 2.0) {
    throw std::invalid_argument("max_steer must be below pi/2");
  }
}

VehicleState vehicle_step(
  const VehicleState & s, double steer_cmd, double accel_cmd, double dt, const VehicleParams & p)
{
  // Exact discretization of the first-order lag over one step.
  const double blend = p.actuator_lag > 0.0 ? 1.0 - std::exp(-dt / p.actuator_lag) : 1.0;
  const double steer_target = std::clamp(steer_cmd, -p.max_steer, p.max_steer);

  VehicleState n = s;
  n.steer = std::clamp(s.steer + blend * (steer_target - s.steer), -p.max_steer, p.max_steer);
  n.a = s.a + blend * (accel_cmd - s.a);

  n.x = s.x + s.v * std::cos(s.psi) * dt;
  n.y = s.y + s.v * std::sin(s.psi) * dt;
  n.psi = normalize_angle(s.psi + s.v * std::tan(n.steer) / p.wheelbase * dt);
  n.v = s.v + n.a * dt;
  // Braking never reverses; residue from rounding counts as standstill.
  if (n.v < 1e-9) {
    n.v = 0.0;
  }
  n.t = s.t + dt;
  return n;
}

Polygon footprint(const VehicleState & s, const VehicleParams & p)
{
  const Vec2 heading{std::cos(s.psi), std::sin(s.psi)};
  const Vec2 center = Vec2{s.x, s.y} + heading * (0.5 * p.wheelbase);
  return oriented_box(center, s.psi, p.length, p.width);
}

}  // namespace tg::vehicle
