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

#include "tg/traj/resample.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace tg::traj
{
namespace
{
// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGaussNodes{
  0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640, 0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights{
  0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
  0.2369268850561891};

// Collapse a final gap shorter than this fraction of ds into the previous sample.
constexpr double kTailMergeFraction = 1e-3;
}  // namespace

ArcLengthTable::ArcLengthTable(const SplineModel & spline, int subdivisions_per_knot)
: spline_(spline)
{
  const auto knots = spline.knots();
  u_.push_back(knots.front());
  s_.push_back(0.0);
  for (size_t k = 0; k + 1 < knots.size(); ++k) {
    const double h = (knots[k + 1] - knots[k]) / subdivisions_per_knot;
    for (int j = 1; j <= subdivisions_per_knot; ++j) {
      const double u1 = (j == subdivisions_per_knot) ? knots[k + 1] : knots[k] + j * h;
      s_.push_back(s_.back() + integrate(u_.back(), u1));
      u_.push_back(u1);
    }
  }
}

double ArcLengthTable::integrate(double u0, double u1) const
{
  const double half = 0.5 * (u1 - u0);
  const double mid = 0.5 * (u1 + u0);
  double sum = 0.0;
  for (size_t i = 0; i < kGaussNodes.size(); ++i) {
    sum += kGaussWeights[i] * norm(spline_.first_derivative(mid + half * kGaussNodes[i]));
  }
  return sum * half;
}

double ArcLengthTable::arc_length(double u) const
{
  u = std::clamp(u, u_.front(), u_.back());
  const auto it = std::upper_bound(u_.begin(), u_.end(), u);
  const size_t i = std::min<size_t>(std::max<std::ptrdiff_t>(it - u_.begin(), 1) - 1, u_.size() - 2);
  return s_[i] + integrate(u_[i], u);
}

double ArcLengthTable::parameter_at(double s) const
{
  if (s <= 0.0) return u_.front();
  if (s >= s_.back()) return u_.back();
  const auto it = std::upper_bound(s_.begin(), s_.end(), s);
  const size_t i = static_cast<size_t>(it - s_.begin()) - 1;
  const double lo = u_[i];
  const double hi = u_[i + 1];
  double u = lo + (hi - lo) * (s - s_[i]) / (s_[i + 1] - s_[i]);
  for (int iter = 0; iter < 8; ++iter) {
    const double err = s_[i] + integrate(lo, u) - s;
    const double speed = norm(spline_.first_derivative(u));
    if (speed <= 0.0) break;
    const double next = std::clamp(u - err / speed, lo, hi);
    if (std::abs(next - u) < 1e-14 * std::max(1.0, std::abs(u))) {
      u = next;
      break;
    }
    u = next;
  }
  return u;
}

std::vector<PathPoint> resample_equidistant(const SplineModel & spline, double ds)
{
  if (!(ds > 0.0) || !std::isfinite(ds)) {
    throw TrajError(TrajError::Code::InvalidArgument, "resample spacing must be positive");
  }
  const ArcLengthTable table(spline);
  const double total = table.total_length();
  if (total < ds) {
    throw TrajError(TrajError::Code::DegenerateSpline, "spline shorter than resample spacing");
  }

  const auto make_point = [&](double s, double u) {
    const Vec2 p = spline.position(u);
    return PathPoint{p.x, p.y, spline.heading(u), spline.curvature(u), s};
  };

  std::vector<PathPoint> out;
  const auto full_steps = static_cast<size_t>(std::floor(total / ds));
  out.reserve(full_steps + 2);
  for (size_t k = 0; k <= full_steps; ++k) {
    const double s = static_cast<double>(k) * ds;
    out.push_back(make_point(s, table.parameter_at(s)));
  }
  const double tail = total - out.back().s;
  if (tail > kTailMergeFraction * ds) {
    out.push_back(make_point(total, spline.parameter_end()));
  } else {
    out.back() = make_point(total, spline.parameter_end());
  }
  return out;
}

}  // namespace tg::traj
