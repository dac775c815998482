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

#ifndef TG__GEOMETRY_HPP_
#define TG__GEOMETRY_HPP_

#include <cmath>
#include <span>
#include <vector>

namespace tg
{
struct Vec2
{
  double x{0.0};
  double y{0.0};

  Vec2 operator+(const Vec2 & o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2 & o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double k) const { return {x * k, y * k}; }
  bool operator==(const Vec2 &) const = default;
};

inline double dot(const Vec2 & a, const Vec2 & b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2 & a, const Vec2 & b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2 & a) { return std::hypot(a.x, a.y); }
inline double distance(const Vec2 & a, const Vec2 & b) { return norm(a - b); }

/// Wraps an angle to (-pi, pi].
double normalize_angle(double a);

/// Simple polygon, vertices in order, implicitly closed.
using Polygon = std::vector<Vec2>;

/// Positive for counter-clockwise vertex order.
double signed_area(std::span<const Vec2> poly);

/// Even-odd rule. Points on the boundary count as inside.
bool point_in_polygon(const Vec2 & p, std::span<const Vec2> poly);

double point_segment_distance(const Vec2 & p, const Vec2 & a, const Vec2 & b);

bool segments_intersect(const Vec2 & a, const Vec2 & b, const Vec2 & c, const Vec2 & d);

double segment_segment_distance(const Vec2 & a, const Vec2 & b, const Vec2 & c, const Vec2 & d);

/// Zero when the segment touches or enters the polygon.
double segment_polygon_distance(const Vec2 & a, const Vec2 & b, std::span<const Vec2> poly);

bool polygons_intersect(std::span<const Vec2> p, std::span<const Vec2> q);

/// Oriented rectangle centred at `center`, `length` along `heading`.
Polygon oriented_box(const Vec2 & center, double heading, double length, double width);

}  // namespace tg

#endif  // TG__GEOMETRY_HPP_
