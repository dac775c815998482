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

#ifndef TG__TRAJ__TYPES_HPP_
#define TG__TRAJ__TYPES_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tg::traj
{
struct Waypoint
{
  double x{0.0};
  double y{0.0};
  bool operator==(const Waypoint &) const = default;
};

struct PathPoint
{
  double x{0.0};
  double y{0.0};
  double heading{0.0};
  double curvature{0.0};
  double s{0.0};
  bool operator==(const PathPoint &) const = default;
};

/// Kinematic limits for one trajectory. Speeds in m/s, accelerations in m/s^2,
/// jerk in m/s^3, curvature in 1/m. Decelerations are positive magnitudes.
struct LimitSet
{
  double v_max{5.0 / 3.6};
  double a_max{0.5};
  double d_max{0.5};
  double a_lat_max{1.5};
  double j_max{1.0};
  double kappa_max{0.2};
  double d_mrm{2.0};

  bool operator==(const LimitSet &) const = default;
};

/// Operator upper speed limit, 36 km/h.
inline constexpr double kOperatorSpeedCap = 10.0;

/// Curvature floor used when converting curvature to a lateral speed cap.
inline constexpr double kCurvatureFloor = 1e-6;

/// Throws TrajError(InvalidLimits) when a limit is non-positive, non-finite,
/// v_max exceeds the operator cap, or d_mrm < d_max.
void validate(const LimitSet & limits);

/// min(v_max, sqrt(a_lat_max / max(|kappa|, floor))).
double speed_cap(const LimitSet & limits, double curvature);

struct Trajectory
{
  std::uint64_t id{0};
  std::vector<PathPoint> points;
  std::vector<double> v;
  std::vector<double> t;
  LimitSet limits;

  double length() const { return points.empty() ? 0.0 : points.back().s - points.front().s; }
  double duration() const { return t.empty() ? 0.0 : t.back(); }
  bool operator==(const Trajectory &) const = default;
};

struct MrmPlan
{
  std::vector<PathPoint> points;
  std::vector<double> v;
  double generated_at_s{0.0};
  double generated_at_time{0.0};
  /// Set when the stop distance did not fit in the remaining path and the
  /// final point was forced to standstill at the path end.
  bool clamped{false};

  double stop_distance() const
  {
    return points.empty() ? 0.0 : points.back().s - points.front().s;
  }
};

class TrajError : public std::runtime_error
{
public:
  enum class Code {
    TooFewWaypoints,
    NonFinite,
    DegenerateSpline,
    EmptyPath,
    InteriorZeroVelocity,
    ProgressOutOfRange,
    InvalidLimits,
    InvalidArgument,
  };

  TrajError(Code code, const std::string & what) : std::runtime_error(what), code_(code) {}
  Code code() const noexcept { return code_; }

private:
  Code code_;
};

}  // namespace tg::traj

#endif  // TG__TRAJ__TYPES_HPP_
