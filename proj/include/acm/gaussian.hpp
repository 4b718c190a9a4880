#pragma once

#include <cmath>

#include "acm/dual.hpp"
#include "acm/errors.hpp"
#include "acm/geometry.hpp"
#include "acm/vec2.hpp"

namespace acm {

// 2x2 symmetric matrix, row-major upper triangle.
template <class T>
struct SymMat2T {
  T xx{};
  T xy{};
  T yy{};
};

using SymMat2 = SymMat2T<double>;

template <class T>
SymMat2T<T> operator+(const SymMat2T<T>& a, const SymMat2T<T>& b) {
  return {a.xx + b.xx, a.xy + b.xy, a.yy + b.yy};
}

template <class T>
T trace(const SymMat2T<T>& m) {
  return m.xx + m.yy;
}

template <class T>
T det(const SymMat2T<T>& m) {
  return m.xx * m.yy - m.xy * m.xy;
}

template <class T>
SymMat2T<T> inverse(const SymMat2T<T>& m) {
  const T d = det(m);
  if (value_of(d) <= 0.0) throw NonSPD("cannot invert a non-positive-definite matrix");
  return {m.yy / d, -m.xy / d, m.xx / d};
}

// tr(a*b) for symmetric a, b.
template <class T>
T trace_product(const SymMat2T<T>& a, const SymMat2T<T>& b) {
  return a.xx * b.xx + 2.0 * a.xy * b.xy + a.yy * b.yy;
}

// v^T m v
template <class T>
T quad_form(const SymMat2T<T>& m, const Vec2T<T>& v) {
  return m.xx * v.x * v.x + 2.0 * m.xy * v.x * v.y + m.yy * v.y * v.y;
}

// a*s*a for symmetric a, s (the sandwich is symmetric again).
template <class T>
SymMat2T<T> sandwich(const SymMat2T<T>& a, const SymMat2T<T>& s) {
  const T p = a.xx * s.xx + a.xy * s.xy;
  const T q = a.xx * s.xy + a.xy * s.yy;
  const T r = a.xy * s.xx + a.yy * s.xy;
  const T t = a.xy * s.xy + a.yy * s.yy;
  return {p * a.xx + q * a.xy, p * a.xy + q * a.yy, r * a.xy + t * a.yy};
}

inline void check_spd(const SymMat2& m) {
  const double tr = trace(m);
  const double disc = tr * tr - 4.0 * det(m);
  const double lambda_min = 0.5 * (tr - std::sqrt(std::max(disc, 0.0)));
  if (!(lambda_min >= 1e-12 * tr) || tr <= 0.0)
    throw NonSPD("covariance is not positive definite");
}

// Closed-form principal square root of a 2x2 SPD matrix.
template <class T>
SymMat2T<T> sqrt_spd(const SymMat2T<T>& m) {
  using std::sqrt;
  const T s = sqrt(det(m));
  const T denom = sqrt(trace(m) + 2.0 * s);
  return {(m.xx + s) / denom, m.xy / denom, (m.yy + s) / denom};
}

template <class T>
struct Gaussian2T {
  Vec2T<T> mu{};
  SymMat2T<T> sigma{};
};

using Gaussian2 = Gaussian2T<double>;

template <class T>
Gaussian2T<T> box_to_gaussian(const T& cx, const T& cy, const T& w, const T& h, const T& theta) {
  using std::cos;
  using std::sin;
  const T c = cos(theta);
  const T s = sin(theta);
  const T a = w * w / 4.0;
  const T b = h * h / 4.0;
  Gaussian2T<T> g;
  g.mu = {cx, cy};
  g.sigma = {a * c * c + b * s * s, (a - b) * c * s, a * s * s + b * c * c};
  return g;
}

inline Gaussian2 box_to_gaussian(const RotatedBox& b) {
  return box_to_gaussian(b.cx, b.cy, b.w, b.h, b.theta);
}

namespace detail {
template <class T>
void check_inputs(const Gaussian2T<T>& a, const Gaussian2T<T>& b) {
  check_spd({value_of(a.sigma.xx), value_of(a.sigma.xy), value_of(a.sigma.yy)});
  check_spd({value_of(b.sigma.xx), value_of(b.sigma.xy), value_of(b.sigma.yy)});
}
}  // namespace detail

// Squared 2-Wasserstein distance.
template <class T>
T gwd(const Gaussian2T<T>& a, const Gaussian2T<T>& b) {
  using std::sqrt;
  detail::check_inputs(a, b);
  const Vec2T<T> d = a.mu - b.mu;
  const SymMat2T<T> ra = sqrt_spd(a.sigma);
  const SymMat2T<T> mid = sandwich(ra, b.sigma);
  T out = dot(d, d) + trace(a.sigma) + trace(b.sigma) - 2.0 * trace(sqrt_spd(mid));
  if (value_of(out) < 0.0) out = T(0.0);
  return out;
}

// D_KL(a || b)
template <class T>
T kld(const Gaussian2T<T>& a, const Gaussian2T<T>& b) {
  using std::log;
  detail::check_inputs(a, b);
  const SymMat2T<T> binv = inverse(b.sigma);
  const Vec2T<T> d = b.mu - a.mu;
  T out = 0.5 * (trace_product(binv, a.sigma) + quad_form(binv, d) - 2.0 +
                 log(det(b.sigma) / det(a.sigma)));
  if (value_of(out) < 0.0) out = T(0.0);
  return out;
}

// Product-Gaussian overlap in (0, 1/3], damped by mean separation so distant
// boxes score lower than the raw volume ratio would say.
template <class T>
T kfiou(const Gaussian2T<T>& a, const Gaussian2T<T>& b) {
  using std::exp;
  using std::sqrt;
  detail::check_inputs(a, b);
  const T va = sqrt(det(a.sigma));
  const T vb = sqrt(det(b.sigma));
  const T vi = sqrt(det(a.sigma) * det(b.sigma) / det(a.sigma + b.sigma));
  const Vec2T<T> d = a.mu - b.mu;
  const T atten = exp(-dot(d, d) / (2.0 * (trace(a.sigma) + trace(b.sigma))));
  const T vi_damped = vi * atten;
  return vi_damped / (va + vb - vi_damped);
}

}  // namespace acm
