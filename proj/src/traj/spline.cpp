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

#include "tg/traj/spline.hpp"

#include <algorithm>
#include <cmath>

namespace tg::traj
{
CubicSpline1D::CubicSpline1D(std::vector<double> knots, std::vector<double> values)
: knots_(std::move(knots))
{
  const size_t n = knots_.size();
  if (n < 2 || values.size() != n) {
    throw TrajError(TrajError::Code::InvalidArgument, "spline needs >= 2 matching knots/values");
  }
  const size_t num_seg = n - 1;
  std::vector<double> h(num_seg);
  for (size_t i = 0; i < num_seg; ++i) {
    h[i] = knots_[i + 1] - knots_[i];
    if (!(h[i] > 0.0)) {
      throw TrajError(TrajError::Code::InvalidArgument, "spline knots must be strictly increasing");
    }
  }

  // Second derivatives m; natural ends m_0 = m_{n-1} = 0. Thomas algorithm on interior.
  std::vector<double> m(n, 0.0);
  if (n > 2) {
    const size_t k = n - 2;
    std::vector<double> diag(k), upper(k), rhs(k);
    for (size_t i = 0; i < k; ++i) {
      diag[i] = 2.0 * (h[i] + h[i + 1]);
      upper[i] = h[i + 1];
      rhs[i] = 6.0 * ((values[i + 2] - values[i + 1]) / h[i + 1] - (values[i + 1] - values[i]) / h[i]);
    }
    for (size_t i = 1; i < k; ++i) {
      const double w = h[i] / diag[i - 1];
      diag[i] -= w * upper[i - 1];
      rhs[i] -= w * rhs[i - 1];
    }
    m[k] = rhs[k - 1] / diag[k - 1];
    for (size_t i = k - 1; i-- > 0;) {
      m[i + 1] = (rhs[i] - upper[i] * m[i + 2]) / diag[i];
    }
  }

  a_.resize(num_seg);
  b_.resize(num_seg);
  c_.resize(num_seg);
  d_.resize(num_seg);
  for (size_t i = 0; i < num_seg; ++i) {
    a_[i] = values[i];
    b_[i] = (values[i + 1] - values[i]) / h[i] - h[i] * (2.0 * m[i] + m[i + 1]) / 6.0;
    c_[i] = 0.5 * m[i];
    d_[i] = (m[i + 1] - m[i]) / (6.0 * h[i]);
  }
}

size_t CubicSpline1D::segment(double u) const
{
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), u);
  const auto idx = static_cast<size_t>(std::distance(knots_.begin(), it));
  return std::clamp<size_t>(idx == 0 ? 0 : idx - 1, 0, a_.size() - 1);
}

double CubicSpline1D::value(double u) const
{
  const size_t i = segment(u);
  const double t = u - knots_[i];
  return a_[i] + t * (b_[i] + t * (c_[i] + t * d_[i]));
}

double CubicSpline1D::first_derivative(double u) const
{
  const size_t i = segment(u);
  const double t = u - knots_[i];
  return b_[i] + t * (2.0 * c_[i] + 3.0 * t * d_[i]);
}

double CubicSpline1D::second_derivative(double u) const
{
  const size_t i = segment(u);
  const double t = u - knots_[i];
  return 2.0 * c_[i] + 6.0 * t * d_[i];
}

namespace
{
std::vector<double> coords(const std::vector<Waypoint> & pts, double Waypoint::*field)
{
  std::vector<double> out;
  out.reserve(pts.size());
  for (const auto & p : pts) {
    out.push_back(p.*field);
  }
  return out;
}
}  // namespace

SplineModel::SplineModel(std::vector<double> knots, const std::vector<Waypoint> & points)
: x_(knots, coords(points, &Waypoint::x)), y_(knots, coords(points, &Waypoint::y)), waypoints_(points)
{
}

double SplineModel::curvature(double u) const
{
  const Vec2 d1 = first_derivative(u);
  const Vec2 d2 = second_derivative(u);
  const double speed2 = dot(d1, d1);
  if (speed2 == 0.0) {
    return 0.0;
  }
  return cross(d1, d2) / std::pow(speed2, 1.5);
}

double SplineModel::heading(double u) const
{
  const Vec2 d1 = first_derivative(u);
  return std::atan2(d1.y, d1.x);
}

std::vector<Waypoint> merge_close_waypoints(std::span<const Waypoint> waypoints)
{
  std::vector<Waypoint> kept;
  kept.reserve(waypoints.size());
  for (const auto & w : waypoints) {
    if (kept.empty() || std::hypot(w.x - kept.back().x, w.y - kept.back().y) >= kWaypointMergeDistance) {
      kept.push_back(w);
    }
  }
  if (!waypoints.empty() && !(kept.back() == waypoints.back())) {
    // The goal wins over a near-duplicate predecessor.
    if (kept.size() > 1) {
      kept.back() = waypoints.back();
    }
  }
  return kept;
}

SplineModel fit_spline(std::span<const Waypoint> waypoints)
{
  for (const auto & w : waypoints) {
    if (!std::isfinite(w.x) || !std::isfinite(w.y)) {
      throw TrajError(TrajError::Code::NonFinite, "waypoint has non-finite coordinates");
    }
  }
  auto pts = merge_close_waypoints(waypoints);
  if (pts.size() < 2) {
    throw TrajError(TrajError::Code::TooFewWaypoints, "need at least two distinct waypoints");
  }
  std::vector<double> knots(pts.size(), 0.0);
  for (size_t i = 1; i < pts.size(); ++i) {
    knots[i] = knots[i - 1] + std::hypot(pts[i].x - pts[i - 1].x, pts[i].y - pts[i - 1].y);
  }
  return SplineModel(std::move(knots), pts);
}

}  // namespace tg::traj
