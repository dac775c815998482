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

#ifndef TG__TRAJ__RESAMPLE_HPP_
#define TG__TRAJ__RESAMPLE_HPP_

#include <vector>

#include "tg/traj/spline.hpp"
#include "tg/traj/types.hpp"

namespace tg::traj
{
inline constexpr double kDefaultResampleSpacing = 0.25;

/// Arc-length lookup for a SplineModel: s(u) by Gauss-Legendre quadrature,
/// u(s) by Newton iteration on the tabulated intervals.
class ArcLengthTable
{
public:
  explicit ArcLengthTable(const SplineModel & spline, int subdivisions_per_knot = 16);

  double total_length() const { return s_.back(); }
  double arc_length(double u) const;
  double parameter_at(double s) const;

private:
  double integrate(double u0, double u1) const;

  const SplineModel & spline_;
  std::vector<double> u_;
  std::vector<double> s_;
};

/// Points at arc-length spacing `ds` from the spline start; the final point is
/// the spline end and its gap may be shorter. Throws DegenerateSpline when the
/// total length is below `ds`, InvalidArgument when ds <= 0.
std::vector<PathPoint> resample_equidistant(const SplineModel & spline, double ds = kDefaultResampleSpacing);

}  // namespace tg::traj

#endif  // TG__TRAJ__RESAMPLE_HPP_
