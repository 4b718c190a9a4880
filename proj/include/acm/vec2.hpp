#pragma once

#include <cmath>

namespace acm {

template <class T>
struct Vec2T {
  T x{};
  T y{};
};

using Vec2 = Vec2T<double>;

template <class T>
Vec2T<T> operator+(const Vec2T<T>& a, const Vec2T<T>& b) {
  return {a.x + b.x, a.y + b.y};
}

template <class T>
Vec2T<T> operator-(const Vec2T<T>& a, const Vec2T<T>& b) {
  return {a.x - b.x, a.y - b.y};
}

template <class T>
Vec2T<T> operator*(const Vec2T<T>& a, T s) {
  return {a.x * s, a.y * s};
}

template <class T>
T dot(const Vec2T<T>& a, const Vec2T<T>& b) {
  return a.x * b.x + a.y * b.y;
}

template <class T>
T cross(const Vec2T<T>& a, const Vec2T<T>& b) {
  return a.x * b.y - a.y * b.x;
}

template <class T>
T norm2(const Vec2T<T>& a) {
  return a.x * a.x + a.y * a.y;
}

inline double norm(const Vec2& a) { return std::sqrt(norm2(a)); }

}  // namespace acm
