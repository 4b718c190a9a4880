#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "acm/errors.hpp"
#include "acm/vec2.hpp"

namespace acm {

inline constexpr double kPi = std::numbers::pi;

// Reduce x into [0, period). fmod can land exactly on the period (or return a
// negative zero's neighbour) after the correction, so clamp both edges.
inline double wrap_angle(double x, double period) {
  double t = std::fmod(x, period);
  if (t < 0.0) t += period;
  if (t >= period) t -= period;
  if (t < 0.0) t = 0.0;
  return t;
}

// Smallest angular distance under the given period, in [0, period/2].
inline double angular_error(double a, double b, double period) {
  double d = wrap_angle(a - b, period);
  return std::min(d, period - d);
}

// Oriented rectangle, long-side convention: w >= h and theta in [0, pi)
// measures the long axis against +x.
struct RotatedBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;
  double theta = 0.0;

  RotatedBox canonicalized() const {
    RotatedBox b = *this;
    if (b.h > b.w) {
      std::swap(b.w, b.h);
      b.theta += kPi / 2.0;
    }
    b.theta = wrap_angle(b.theta, kPi);
    return b;
  }

  double area() const { return w * h; }
};

struct Quad {
  std::array<Vec2, 4> pts{};
};

// CCW corners in a y-up frame, starting from the (-u, -v) corner.
inline Quad corners(const RotatedBox& b) {
  const Vec2 u{std::cos(b.theta), std::sin(b.theta)};
  const Vec2 v{-u.y, u.x};
  const Vec2 c{b.cx, b.cy};
  const Vec2 eu = u * (b.w / 2.0);
  const Vec2 ev = v * (b.h / 2.0);
  Quad q;
  q.pts[0] = c - eu - ev;
  q.pts[1] = c + eu - ev;
  q.pts[2] = c + eu + ev;
  q.pts[3] = c - eu + ev;
  return q;
}

// An object heading is a full direction in [0, 2*pi); the box orientation only
// retains it modulo the symmetry period of the shape.
struct ObjectPose {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;
  double phi = 0.0;
};

inline RotatedBox box_of_object(const ObjectPose& o, double period) {
  if (period != kPi && period != kPi / 2.0)
    throw std::invalid_argument("box symmetry period must be pi or pi/2");
  RotatedBox b{o.cx, o.cy, o.w, o.h, wrap_angle(o.phi, period)};
  return b.canonicalized();
}

namespace detail {

// Monotone chain. Returns a CCW hull without the closing repeat.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  const int n = static_cast<int>(pts.size());
  if (n < 3) return pts;
  std::vector<Vec2> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (int i = n - 2, lo = k + 1; i >= 0; --i) {
    while (k >= lo && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

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

}  // namespace detail

// Minimum-area enclosing rectangle via rotating calipers over the hull edges.
inline RotatedBox min_area_rect(const std::vector<Vec2>& points) {
  std::vector<Vec2> hull = detail::convex_hull(points);
  if (hull.size() < 3 || detail::polygon_area(hull) < 1e-12)
    throw DegenerateQuad("points are collinear or coincident");

  const size_t n = hull.size();
  double best_area = std::numeric_limits<double>::infinity();
  RotatedBox best;
  for (size_t i = 0; i < n; ++i) {
    const Vec2 e = hull[(i + 1) % n] - hull[i];
    const double len = norm(e);
    if (len < 1e-15) continue;
    const Vec2 u = e * (1.0 / len);
    const Vec2 v{-u.y, u.x};
    double lo_u = std::numeric_limits<double>::infinity(), hi_u = -lo_u;
    double lo_v = lo_u, hi_v = -lo_u;
    for (const Vec2& p : hull) {
      const double pu = dot(p, u);
      const double pv = dot(p, v);
      lo_u = std::min(lo_u, pu);
      hi_u = std::max(hi_u, pu);
      lo_v = std::min(lo_v, pv);
      hi_v = std::max(hi_v, pv);
    }
    const double area = (hi_u - lo_u) * (hi_v - lo_v);
    if (area < best_area) {
      best_area = area;
      const double mu = 0.5 * (lo_u + hi_u);
      const double mv = 0.5 * (lo_v + hi_v);
      best.cx = u.x * mu + v.x * mv;
      best.cy = u.y * mu + v.y * mv;
      best.w = hi_u - lo_u;
      best.h = hi_v - lo_v;
      best.theta = std::atan2(u.y, u.x);
    }
  }
  return best.canonicalized();
}

}  // namespace acm
