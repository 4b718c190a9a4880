#pragma once

#include <algorithm>
#include <cmath>
#include <tuple>
#include <vector>

#include "acm/geometry.hpp"
#include "acm/polygon.hpp"

namespace acm {

inline bool contains(const RotatedBox& b, const Vec2& p) {
  const double c = std::cos(b.theta);
  const double s = std::sin(b.theta);
  const double dx = p.x - b.cx;
  const double dy = p.y - b.cy;
  const double u = c * dx + s * dy;
  const double v = -s * dx + c * dy;
  return std::fabs(u) <= b.w / 2.0 && std::fabs(v) <= b.h / 2.0;
}

namespace detail {
inline std::vector<Vec2> quad_vertices(const RotatedBox& b) {
  const Quad q = corners(b);
  return {q.pts.begin(), q.pts.end()};
}
}  // namespace detail

// Exact polygon-clipping IoU of two oriented rectangles. Arguments are put in
// a canonical order first so the result is bitwise symmetric.
inline double skew_iou(RotatedBox a, RotatedBox b) {
  const auto key = [](const RotatedBox& r) {
    return std::make_tuple(r.cx, r.cy, r.w, r.h, r.theta);
  };
  if (key(b) < key(a)) std::swap(a, b);

  const std::vector<Vec2> pa = detail::quad_vertices(a);
  const std::vector<Vec2> pb = detail::quad_vertices(b);
  const double area_a = polygon_area(pa);
  const double area_b = polygon_area(pb);

  const std::vector<Vec2> ip = clip_convex(pa, pb);
  double inter = ip.size() >= 3 ? polygon_area(ip) : 0.0;
  inter = std::max(inter, 0.0);

  const double uni = area_a + area_b - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

}  // namespace acm
