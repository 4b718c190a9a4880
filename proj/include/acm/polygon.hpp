#pragma once

#include <utility>
#include <vector>

#include "acm/vec2.hpp"

namespace acm {

// Signed shoelace area; positive for CCW.
inline double polygon_area(const std::vector<Vec2>& p) {
  double s = 0.0;
  const size_t n = p.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = p[i];
    const Vec2& b = p[(i + 1) % n];
    s += a.x * b.y - b.x * a.y;
  }
  return 0.5 * s;
}

// Sutherland-Hodgman clip of a convex CCW subject against a convex CCW
// clipper. Points exactly on an edge count as inside, so clipping a polygon
// against itself returns its vertices unchanged.
inline std::vector<Vec2> clip_convex(std::vector<Vec2> subject, const std::vector<Vec2>& clipper) {
  const size_t m = clipper.size();
  std::vector<Vec2> input;
  for (size_t e = 0; e < m && !subject.empty(); ++e) {
    const Vec2 a = clipper[e];
    const Vec2 b = clipper[(e + 1) % m];
    const Vec2 dir = b - a;
    input = std::move(subject);
    subject.clear();
    const size_t n = input.size();
    for (size_t i = 0; i < n; ++i) {
      const Vec2 prev = input[(i + n - 1) % n];
      const Vec2 cur = input[i];
      const double side_prev = cross(dir, prev - a);
      const double side_cur = cross(dir, cur - a);
      const bool in_prev = side_prev >= 0.0;
      const bool in_cur = side_cur >= 0.0;
      if (in_cur != in_prev) {
        const double t = side_prev / (side_prev - side_cur);
        subject.push_back(prev + (cur - prev) * t);
      }
      if (in_cur) subject.push_back(cur);
    }
  }
  return subject;
}

}  // namespace acm
