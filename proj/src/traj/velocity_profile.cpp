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

#include "tg/traj/velocity_profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tg::traj
{
void validate(const LimitSet & l)
{
  for (double v : {l.v_max, l.a_max, l.d_max, l.a_lat_max, l.j_max, l.kappa_max, l.d_mrm}) {
    if (!std::isfinite(v) || v <= 0.0) {
      throw TrajError(TrajError::Code::InvalidLimits, "limits must be finite and positive");
    }
  }
  if (l.v_max > kOperatorSpeedCap) {
    throw TrajError(TrajError::Code::InvalidLimits, "v_max exceeds the 36 km/h operator cap");
  }
  if (l.d_mrm < l.d_max) {
    throw TrajError(TrajError::Code::InvalidLimits, "d_mrm must be >= d_max");
  }
}

double speed_cap(const LimitSet & limits, double curvature)
{
  return std::min(
    limits.v_max, std::sqrt(limits.a_lat_max / std::max(std::abs(curvature), kCurvatureFloor)));
}

namespace
{
// Relaxation aims slightly under the limit so corners settle in few sweeps.
constexpr double kJerkTargetRatio = 0.95;
constexpr double kJerkAcceptRatio = 1.0 + 1e-3;
constexpr int kMaxRelaxationSweeps = 20000;

class SquaredSpeedProfile
{
public:
  SquaredSpeedProfile(std::vector<double> ds, std::vector<double> e) : ds_(std::move(ds)), e_(std::move(e)) {}

  size_t last() const { return e_.size() - 1; }
  const std::vector<double> & values() const { return e_; }

  double accel(size_t i) const { return (e_[i + 1] - e_[i]) / ds_[i]; }
  double interval_time(size_t i) const
  {
    const double vs = std::sqrt(2.0 * e_[i]) + std::sqrt(2.0 * e_[i + 1]);
    return vs > 0.0 ? 2.0 * ds_[i] / vs : std::numeric_limits<double>::infinity();
  }

  void accel_passes(double a_max, double d_max)
  {
    for (size_t i = 0; i < last(); ++i) {
      e_[i + 1] = std::min(e_[i + 1], e_[i] + a_max * ds_[i]);
    }
    for (size_t i = last(); i-- > 0;) {
      e_[i] = std::min(e_[i], e_[i + 1] + d_max * ds_[i]);
    }
  }

  // One Gauss-Seidel sweep over interior corners; true if any corner was over the limit.
  bool relax_jerk(double j_max)
  {
    bool violated = false;
    const double j_target = kJerkTargetRatio * j_max;
    for (size_t k = 1; k < last(); ++k) {
      const double tau = 0.5 * (interval_time(k - 1) + interval_time(k));
      if (!std::isfinite(tau)) {
        continue;
      }
      const double gap = accel(k) - accel(k - 1);
      if (std::abs(gap) <= kJerkAcceptRatio * j_max * tau) {
        continue;
      }
      violated = true;
      if (gap < 0.0) {
        // Concave corner: pull the corner point down until the gap closes.
        const double delta = (-j_target * tau - gap) / (1.0 / ds_[k - 1] + 1.0 / ds_[k]);
        e_[k] = std::max(0.0, e_[k] - delta);
        continue;
      }
      // Convex corner: lower whichever interior neighbour sits higher.
      const bool can_prev = k - 1 > 0 && e_[k - 1] > 0.0;
      const bool can_next = k + 1 < last() && e_[k + 1] > 0.0;
      if (!can_prev && !can_next) {
        continue;
      }
      const bool use_next = can_next && (!can_prev || e_[k + 1] >= e_[k - 1]);
      if (use_next) {
        e_[k + 1] = std::max(0.0, e_[k + 1] - (gap - j_target * tau) * ds_[k]);
      } else {
        e_[k - 1] = std::max(0.0, e_[k - 1] - (gap - j_target * tau) * ds_[k - 1]);
      }
    }
    return violated;
  }

private:
  std::vector<double> ds_;
  std::vector<double> e_;
};

}  // namespace

std::vector<double> velocity_profile(
  std::span<const PathPoint> points, const LimitSet & limits, double v_start, double v_end)
{
  if (points.empty()) {
    throw TrajError(TrajError::Code::EmptyPath, "velocity profile of an empty path");
  }
  validate(limits);
  if (!(v_start >= 0.0) || !(v_end >= 0.0)) {
    throw TrajError(TrajError::Code::InvalidArgument, "boundary speeds must be non-negative");
  }

  const size_t n = points.size();
  std::vector<double> caps(n);
  std::vector<double> e(n);
  for (size_t i = 0; i < n; ++i) {
    caps[i] = speed_cap(limits, points[i].curvature);
    e[i] = 0.5 * caps[i] * caps[i];
  }
  e.front() = std::min(e.front(), 0.5 * v_start * v_start);
  e.back() = std::min(e.back(), 0.5 * v_end * v_end);
  if (n == 1) {
    return {std::sqrt(2.0 * std::min(e.front(), 0.5 * v_end * v_end))};
  }

  std::vector<double> ds(n - 1);
  for (size_t i = 0; i + 1 < n; ++i) {
    ds[i] = points[i + 1].s - points[i].s;
    if (!(ds[i] > 0.0)) {
      throw TrajError(TrajError::Code::InvalidArgument, "path arc length must be strictly increasing");
    }
  }

  SquaredSpeedProfile profile(std::move(ds), std::move(e));
  profile.accel_passes(limits.a_max, limits.d_max);
  for (int sweep = 0; sweep < kMaxRelaxationSweeps; ++sweep) {
    const bool violated = profile.relax_jerk(limits.j_max);
    profile.accel_passes(limits.a_max, limits.d_max);
    if (!violated) {
      break;
    }
  }

  // Points still sitting on their cap report the cap itself, not a rounded sqrt.
  std::vector<double> v(n);
  for (size_t i = 0; i < n; ++i) {
    const double ei = profile.values()[i];
    v[i] = (ei == 0.5 * caps[i] * caps[i]) ? caps[i] : std::min(caps[i], std::sqrt(2.0 * ei));
  }
  return v;
}

}  // namespace tg::traj
