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

#include "tg/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

namespace tg
{
double normalize_angle(double a)
{
  a = std::fmod(a + std::numbers::pi, 2.0 * std::numbers::pi);
  if (a <= 0.0) {
    a += 2.0 * std::numbers::pi;
  }
  return a - std::numbers::pi;
}

double signed_area(std::span<const Vec2> poly)
{
  double area = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    area += cross(poly[i], poly[(i + 1) % poly.size()]);
  }
  return 0.5 * area;
}

bool point_in_polygon(const Vec2 & p, std::span<const Vec2> poly)
{
  const size_t n = poly.size();
  if (n < 3) {
    return false;
  }
  bool inside = false;
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 & a = poly[i];
    const Vec2 & b = poly[j];
    if (point_segment_distance(p, a, b) < 1e-12) {
      return true;
    }
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) {
        inside = !inside;
      }
    }
  }
  return inside;
}

double point_segment_distance(const Vec2 & p, const Vec2 & a, const Vec2 & b)
{
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) {
    return distance(p, a);
  }
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

namespace
{
int orientation(const Vec2 & a, const Vec2 & b, const Vec2 & c)
{
  const double v = cross(b - a, c - a);
  if (v > 0.0) return 1;
  if (v < 0.0) return -1;
  return 0;
}

bool on_segment(const Vec2 & a, const Vec2 & b, const Vec2 & p)
{
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}
}  // namespace

bool segments_intersect(const Vec2 & a, const Vec2 & b, const Vec2 & c, const Vec2 & d)
{
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

double segment_segment_distance(const Vec2 & a, const Vec2 & b, const Vec2 & c, const Vec2 & d)
{
  if (segments_intersect(a, b, c, d)) {
    return 0.0;
  }
  return std::min(
    {point_segment_distance(a, c, d), point_segment_distance(b, c, d),
     point_segment_distance(c, a, b), point_segment_distance(d, a, b)});
}

double segment_polygon_distance(const Vec2 & a, const Vec2 & b, std::span<const Vec2> poly)
{
  if (point_in_polygon(a, poly) || point_in_polygon(b, poly)) {
    return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < poly.size(); ++i) {
    best = std::min(best, segment_segment_distance(a, b, poly[i], poly[(i + 1) % poly.size()]));
  }
  return best;
}

bool polygons_intersect(std::span<const Vec2> p, std::span<const Vec2> q)
{
  if (p.empty() || q.empty()) {
    return false;
  }
  for (size_t i = 0; i < p.size(); ++i) {
    for (size_t j = 0; j < q.size(); ++j) {
      if (segments_intersect(p[i], p[(i + 1) % p.size()], q[j], q[(j + 1) % q.size()])) {
        return true;
      }
    }
  }
  return point_in_polygon(p.front(), q) || point_in_polygon(q.front(), p);
}

Polygon oriented_box(const Vec2 & center, double heading, double length, double width)
{
  const Vec2 f{std::cos(heading) * 0.5 * length, std::sin(heading) * 0.5 * length};
  const Vec2 l{-std::sin(heading) * 0.5 * width, std::cos(heading) * 0.5 * width};
  return {center - f - l, center + f - l, center + f + l, center - f + l};
}

}  // namespace tg
