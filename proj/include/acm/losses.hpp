#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "acm/angle_codec.hpp"
#include "acm/dual.hpp"
#include "acm/errors.hpp"
#include "acm/gaussian.hpp"
#include "acm/geometry.hpp"
#include "acm/rotated_iou.hpp"

namespace acm {

enum class LossKind { gwd, kld, kfiou, skewiou };

inline const char* to_string(LossKind k) {
  switch (k) {
    case LossKind::gwd: return "gwd";
    case LossKind::kld: return "kld";
    case LossKind::kfiou: return "kfiou";
    case LossKind::skewiou: return "skewiou";
  }
  return "?";
}

inline LossKind loss_kind_from_string(const std::string& s) {
  if (s == "gwd") return LossKind::gwd;
  if (s == "kld") return LossKind::kld;
  if (s == "kfiou") return LossKind::kfiou;
  if (s == "skewiou") return LossKind::skewiou;
  throw std::invalid_argument("unknown loss kind '" + s + "'");
}

struct LossWeights {
  double lambda_box = 1.0;
  double lambda_acm = 0.2;
};

// Normalization constant for distance-valued losses: L = 1 - 1/(tau + ln(1+d)).
inline constexpr double kDistanceTau = 1.0;

template <class T>
struct PredictionHeadT {
  T c_p{};
  T cx{};
  T cy{};
  T w{};
  T h{};
  EncodedAngleT<T> encoded{};
};

using PredictionHead = PredictionHeadT<double>;

struct TargetRecord {
  int c_t = 1;
  RotatedBox box;
};

template <class T>
T smooth_l1_term(const T& d) {
  using std::fabs;
  const T a = fabs(d);
  if (a < 1.0) return 0.5 * d * d;
  return a - 0.5;
}

inline double smooth_l1(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size())
    throw LengthMismatch("smooth_l1 expects equal lengths, got " + std::to_string(x.size()) +
                         " and " + std::to_string(y.size()));
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += smooth_l1_term(x[i] - y[i]);
  return s;
}

template <class T>
T acl_loss(const EncodedAngleT<T>& pred, double theta_t) {
  const EncodedAngle t = encode_full(theta_t);
  return smooth_l1_term(pred.fx2 - t.fx2) + smooth_l1_term(pred.fy2 - t.fy2) +
         smooth_l1_term(pred.fx4 - t.fx4) + smooth_l1_term(pred.fy4 - t.fy4);
}

namespace detail {
template <class T>
T clamp_unit(const T& p) {
  if (value_of(p) < 1e-7) return T(1e-7);
  if (value_of(p) > 1.0 - 1e-7) return T(1.0 - 1e-7);
  return p;
}
}  // namespace detail

template <class T>
T focal_loss(const T& c_p, int c_t, double alpha = 0.25, double gamma = 2.0) {
  using std::log;
  using std::pow;
  const T p = detail::clamp_unit(c_p);
  const T p_t = c_t == 1 ? p : T(1.0) - p;
  return -alpha * pow(T(1.0) - p_t, gamma) * log(p_t);
}

template <class T>
RotatedBox predicted_box(const PredictionHeadT<T>& pred) {
  return {value_of(pred.cx), value_of(pred.cy), value_of(pred.w), value_of(pred.h),
          value_of(decode_full(pred.encoded))};
}

namespace detail {
template <class T>
Gaussian2T<T> as_scalar(const Gaussian2& g) {
  Gaussian2T<T> out;
  out.mu = {T(g.mu.x), T(g.mu.y)};
  out.sigma = {T(g.sigma.xx), T(g.sigma.xy), T(g.sigma.yy)};
  return out;
}

template <class T>
T distance_loss_of_params(const T& cx, const T& cy, const T& w, const T& h, const T& theta,
                          const TargetRecord& target, LossKind kind) {
  using std::log1p;
  const Gaussian2T<T> gp = box_to_gaussian(cx, cy, w, h, theta);
  const Gaussian2T<T> gt = as_scalar<T>(box_to_gaussian(target.box));
  switch (kind) {
    case LossKind::gwd:
      return 1.0 - 1.0 / (kDistanceTau + log1p(gwd(gp, gt)));
    case LossKind::kld:
      return 1.0 - 1.0 / (kDistanceTau + log1p(kld(gp, gt)));
    case LossKind::kfiou:
      return 1.0 - 3.0 * kfiou(gp, gt);
    default:
      throw std::invalid_argument("distance loss: unsupported kind");
  }
}

template <class T>
T distance_box_loss(const PredictionHeadT<T>& pred, const TargetRecord& target, LossKind kind) {
  return distance_loss_of_params(pred.cx, pred.cy, pred.w, pred.h, decode_full(pred.encoded),
                                 target, kind);
}
}  // namespace detail

inline double box_loss(const PredictionHead& pred, const TargetRecord& target, LossKind kind) {
  if (kind == LossKind::skewiou)
    return 1.0 - skew_iou(predicted_box(pred), target.box);
  return detail::distance_box_loss(pred, target, kind);
}

inline double total_loss(const PredictionHead& pred, const TargetRecord& target, LossKind kind,
                         const LossWeights& w = {}) {
  return focal_loss(pred.c_p, target.c_t) + w.lambda_box * box_loss(pred, target, kind) +
         w.lambda_acm * acl_loss(pred.encoded, target.box.theta);
}

// Gradient w.r.t. the head's continuous fields.
struct HeadGrad {
  double c_p = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;
  double fx2 = 0.0;
  double fy2 = 0.0;
  double fx4 = 0.0;
  double fy4 = 0.0;
};

inline std::array<double, 4> acl_loss_grad(const EncodedAngle& pred, double theta_t) {
  using D = Dual<4>;
  EncodedAngleT<D> p{D::var(pred.fx2, 0), D::var(pred.fy2, 1), D::var(pred.fx4, 2),
                     D::var(pred.fy4, 3)};
  return acl_loss(p, theta_t).d;
}

inline double focal_loss_grad(double c_p, int c_t, double alpha = 0.25, double gamma = 2.0) {
  using D = Dual<1>;
  return focal_loss(D::var(c_p, 0), c_t, alpha, gamma).d[0];
}

// Central finite differences of the skew-IoU loss over the five assembled box
// parameters; clipping has no useful closed-form derivative.
inline std::array<double, 5> skewiou_fd_grad(const RotatedBox& pred, const RotatedBox& target,
                                             double step = 1e-5) {
  const std::array<double, 5> base{pred.cx, pred.cy, pred.w, pred.h, pred.theta};
  const auto box_at = [](const std::array<double, 5>& a) {
    return RotatedBox{a[0], a[1], a[2], a[3], a[4]};
  };
  std::array<double, 5> g{};
  for (int i = 0; i < 5; ++i) {
    std::array<double, 5> lo = base;
    std::array<double, 5> hi = base;
    lo[i] -= step;
    hi[i] += step;
    g[i] = ((1.0 - skew_iou(box_at(hi), target)) - (1.0 - skew_iou(box_at(lo), target))) /
           (2.0 * step);
  }
  return g;
}

inline std::pair<double, HeadGrad> box_loss_value_grad(const PredictionHead& pred,
                                                       const TargetRecord& target, LossKind kind) {
  HeadGrad g;
  if (kind == LossKind::skewiou) {
    const RotatedBox bp = predicted_box(pred);
    const double value = 1.0 - skew_iou(bp, target.box);
    const std::array<double, 5> fd = skewiou_fd_grad(bp, target.box);
    g.cx = fd[0];
    g.cy = fd[1];
    g.w = fd[2];
    g.h = fd[3];
    const std::array<double, 4> dg = decode_full_grad(pred.encoded);
    g.fx4 = fd[4] * dg[2];
    g.fy4 = fd[4] * dg[3];
    return {value, g};
  }
  using D = Dual<8>;
  PredictionHeadT<D> p;
  p.c_p = D(pred.c_p);
  p.cx = D::var(pred.cx, 0);
  p.cy = D::var(pred.cy, 1);
  p.w = D::var(pred.w, 2);
  p.h = D::var(pred.h, 3);
  p.encoded = {D::var(pred.encoded.fx2, 4), D::var(pred.encoded.fy2, 5),
               D::var(pred.encoded.fx4, 6), D::var(pred.encoded.fy4, 7)};
  const D loss = detail::distance_box_loss(p, target, kind);
  g.cx = loss.d[0];
  g.cy = loss.d[1];
  g.w = loss.d[2];
  g.h = loss.d[3];
  g.fx2 = loss.d[4];
  g.fy2 = loss.d[5];
  g.fx4 = loss.d[6];
  g.fy4 = loss.d[7];
  return {loss.v, g};
}

inline HeadGrad box_loss_grad(const PredictionHead& pred, const TargetRecord& target,
                              LossKind kind) {
  return box_loss_value_grad(pred, target, kind).second;
}

inline HeadGrad total_loss_grad(const PredictionHead& pred, const TargetRecord& target,
                                LossKind kind, const LossWeights& w = {}) {
  HeadGrad g = box_loss_grad(pred, target, kind);
  g.cx *= w.lambda_box;
  g.cy *= w.lambda_box;
  g.w *= w.lambda_box;
  g.h *= w.lambda_box;
  g.fx2 *= w.lambda_box;
  g.fy2 *= w.lambda_box;
  g.fx4 *= w.lambda_box;
  g.fy4 *= w.lambda_box;
  const std::array<double, 4> a = acl_loss_grad(pred.encoded, target.box.theta);
  g.fx2 += w.lambda_acm * a[0];
  g.fy2 += w.lambda_acm * a[1];
  g.fx4 += w.lambda_acm * a[2];
  g.fy4 += w.lambda_acm * a[3];
  g.c_p = focal_loss_grad(pred.c_p, target.c_t);
  return g;
}

}  // namespace acm
