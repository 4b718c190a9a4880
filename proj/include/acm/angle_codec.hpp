#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "acm/dual.hpp"
#include "acm/errors.hpp"
#include "acm/geometry.hpp"
#include "acm/vec2.hpp"

namespace acm {

inline void check_omega(int omega) {
  if (omega != 1 && omega != 2 && omega != 4)
    throw std::invalid_argument("frequency must be 1, 2 or 4");
}

// Map an angle onto the unit circle at frequency omega. Angles that differ by
// 2*pi/omega encode identically, which is exactly the symmetry we want to
// absorb: omega=2 for boxes with pi-periodic orientation, omega=4 for squares.
template <class T>
Vec2T<T> encode(const T& theta, int omega) {
  check_omega(omega);
  using std::cos;
  using std::sin;
  const T a = theta * static_cast<double>(omega);
  return {cos(a), sin(a)};
}

// Inverse map, range [0, 2*pi/omega). atan2 shifted by 2*pi is strictly
// positive, so fmod already lands in [0, 2*pi) without edge guards.
template <class T>
T decode(const T& fx, const T& fy, int omega) {
  check_omega(omega);
  using std::atan2;
  using std::fmod;
  if (value_of(fx * fx + fy * fy) < 1e-24)
    throw ZeroVector("cannot decode an angle from a near-zero vector");
  const T a = atan2(fy, fx) + 2.0 * kPi;
  return fmod(a, 2.0 * kPi) / static_cast<double>(omega);
}

template <class T>
struct EncodedAngleT {
  T fx2{};
  T fy2{};
  T fx4{};
  T fy4{};
};

using EncodedAngle = EncodedAngleT<double>;

template <class T>
EncodedAngleT<T> encode_full(const T& theta) {
  const Vec2T<T> e2 = encode(theta, 2);
  const Vec2T<T> e4 = encode(theta, 4);
  return {e2.x, e2.y, e4.x, e4.y};
}

// Recover a pi-periodic angle from the pair of decodes. theta4 fixes the fine
// position within a quadrant-sized period; the coarse decode only decides
// which of the two pi/2-shifted candidates to take.
template <class T>
T fuse(const T& theta2, const T& theta4) {
  if (theta2 - theta4 > kPi / 4.0) return theta4 + kPi / 2.0;
  return theta4;
}

template <class T>
T decode_full(const EncodedAngleT<T>& e) {
  return fuse(decode(e.fx2, e.fy2, 2), decode(e.fx4, e.fy4, 4));
}

// Analytic gradient of decode w.r.t. (fx, fy), away from the branch cut.
inline Vec2 decode_grad(double fx, double fy, int omega) {
  check_omega(omega);
  const double n2 = fx * fx + fy * fy;
  if (n2 < 1e-24) throw ZeroVector("cannot decode an angle from a near-zero vector");
  return {-fy / (omega * n2), fx / (omega * n2)};
}

// The fused angle is theta4 plus a locally constant offset, so only the
// omega=4 channel carries gradient.
inline std::array<double, 4> decode_full_grad(const EncodedAngle& e) {
  const Vec2 g4 = decode_grad(e.fx4, e.fy4, 4);
  return {0.0, 0.0, g4.x, g4.y};
}

}  // namespace acm
