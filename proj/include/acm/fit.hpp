#pragma once

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "acm/angle_codec.hpp"
#include "acm/errors.hpp"
#include "acm/geometry.hpp"
#include "acm/losses.hpp"
#include "acm/mlp.hpp"
#include "acm/rotated_iou.hpp"

namespace acm {

enum class Arm { direct, w1, w2, w4, fused };

inline const char* to_string(Arm a) {
  switch (a) {
    case Arm::direct: return "direct";
    case Arm::w1: return "acm-w1";
    case Arm::w2: return "acm-w2";
    case Arm::w4: return "acm-w4";
    case Arm::fused: return "acm-fused";
  }
  return "?";
}

inline Arm arm_from_string(const std::string& s) {
  if (s == "direct") return Arm::direct;
  if (s == "acm-w1") return Arm::w1;
  if (s == "acm-w2") return Arm::w2;
  if (s == "acm-w4") return Arm::w4;
  if (s == "acm-fused") return Arm::fused;
  throw std::invalid_argument("unknown arm '" + s + "'");
}

struct FitConfig {
  Arm arm = Arm::fused;
  LossKind kind = LossKind::kfiou;
  double aspect = 4.0;
  int samples = 512;
  int epochs = 2000;
  double lr = 0.05;
  std::uint64_t seed = 1;
  LossWeights weights{};
  bool unfreeze_box = false;
  bool direct_box_objective = false;
  int sweep_steps = 360;
  double grad_clip = 100.0;  // global norm; <= 0 disables
  std::vector<int> hidden = {64, 64};
};

// Square-like objects have a quarter-turn symmetry; everything longer keeps
// the usual half-turn box period.
inline double symmetry_period(double aspect) { return aspect == 1.0 ? kPi / 2.0 : kPi; }

struct SyntheticSample {
  double phi = 0.0;
  std::array<double, 2> input{};  // (cos phi, sin phi)
  ObjectPose pose;
  TargetRecord target;
};

inline SyntheticSample make_sample(double phi, double aspect) {
  SyntheticSample s;
  s.phi = phi;
  s.input = {std::cos(phi), std::sin(phi)};
  s.pose = {0.0, 0.0, aspect, 1.0, phi};
  s.target.c_t = 1;
  s.target.box = box_of_object(s.pose, symmetry_period(aspect));
  return s;
}

inline std::vector<SyntheticSample> generate_dataset(int n, double aspect, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("need at least one sample");
  if (aspect < 1.0) throw std::invalid_argument("aspect ratio must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  std::vector<SyntheticSample> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(make_sample(u(rng), aspect));
  return out;
}

inline int angle_output_dim(Arm a) {
  switch (a) {
    case Arm::direct: return 1;
    case Arm::w1:
    case Arm::w2:
    case Arm::w4: return 2;
    case Arm::fused: return 4;
  }
  return 0;
}

inline int arm_omega(Arm a) {
  switch (a) {
    case Arm::w1: return 1;
    case Arm::w2: return 2;
    case Arm::w4: return 4;
    default: throw std::invalid_argument("arm has no single frequency");
  }
}

inline int output_dim(const FitConfig& cfg) {
  return angle_output_dim(cfg.arm) + (cfg.unfreeze_box ? 4 : 0);
}

struct TrainedModel {
  FitConfig cfg;
  Mlp net;
  std::vector<double> loss_curve;
};

inline double decode_arm(Arm arm, const std::vector<double>& raw) {
  switch (arm) {
    case Arm::direct: return raw[0];
    case Arm::w1:
    case Arm::w2:
    case Arm::w4: return decode(raw[0], raw[1], arm_omega(arm));
    case Arm::fused: return decode_full(EncodedAngle{raw[0], raw[1], raw[2], raw[3]});
  }
  return 0.0;
}

// Box heads sit after the angle heads; widths and heights go through exp so
// they stay positive.
inline RotatedBox assemble_box(const FitConfig& cfg, const std::vector<double>& raw, double theta,
                               const RotatedBox& target) {
  if (!cfg.unfreeze_box) return {target.cx, target.cy, target.w, target.h, theta};
  const int k = angle_output_dim(cfg.arm);
  return {raw[k], raw[k + 1], std::exp(raw[k + 2]), std::exp(raw[k + 3]), theta};
}

namespace detail {

inline double drho(double d) {
  if (std::fabs(d) < 1.0) return d;
  return d > 0.0 ? 1.0 : -1.0;
}

// Loss and d(loss)/d(raw outputs) for one sample.
inline double sample_loss(const FitConfig& cfg, const SyntheticSample& s,
                          const std::vector<double>& out, std::vector<double>& dout) {
  const double theta_t = s.target.box.theta;
  const int k = angle_output_dim(cfg.arm);

  const auto box_param_grads = [&](const HeadGrad& hg, double scale) {
    if (!cfg.unfreeze_box) return;
    dout[k] += scale * hg.cx;
    dout[k + 1] += scale * hg.cy;
    dout[k + 2] += scale * hg.w * std::exp(out[k + 2]);
    dout[k + 3] += scale * hg.h * std::exp(out[k + 3]);
  };

  switch (cfg.arm) {
    case Arm::direct: {
      if (!cfg.direct_box_objective) {
        const double d = out[0] - theta_t;
        dout[0] = drho(d);
        return smooth_l1_term(d);
      }
      const RotatedBox bp = assemble_box(cfg, out, out[0], s.target.box);
      if (cfg.kind == LossKind::skewiou) {
        const std::array<double, 5> fd = skewiou_fd_grad(bp, s.target.box);
        dout[0] = fd[4];
        HeadGrad hg;
        hg.cx = fd[0];
        hg.cy = fd[1];
        hg.w = fd[2];
        hg.h = fd[3];
        box_param_grads(hg, 1.0);
        return 1.0 - skew_iou(bp, s.target.box);
      }
      using D = Dual<5>;
      const D loss =
          distance_loss_of_params(D::var(bp.cx, 0), D::var(bp.cy, 1), D::var(bp.w, 2),
                                  D::var(bp.h, 3), D::var(bp.theta, 4), s.target, cfg.kind);
      dout[0] = loss.d[4];
      HeadGrad hg;
      hg.cx = loss.d[0];
      hg.cy = loss.d[1];
      hg.w = loss.d[2];
      hg.h = loss.d[3];
      box_param_grads(hg, 1.0);
      return loss.v;
    }
    case Arm::w1:
    case Arm::w2:
    case Arm::w4: {
      const Vec2 enc = encode(theta_t, arm_omega(cfg.arm));
      const double d0 = out[0] - enc.x;
      const double d1 = out[1] - enc.y;
      dout[0] = drho(d0);
      dout[1] = drho(d1);
      return smooth_l1_term(d0) + smooth_l1_term(d1);
    }
    case Arm::fused: {
      PredictionHead p;
      p.c_p = 1.0;
      p.encoded = {out[0], out[1], out[2], out[3]};
      if (cfg.unfreeze_box) {
        p.cx = out[k];
        p.cy = out[k + 1];
        p.w = std::exp(out[k + 2]);
        p.h = std::exp(out[k + 3]);
      } else {
        p.cx = s.target.box.cx;
        p.cy = s.target.box.cy;
        p.w = s.target.box.w;
        p.h = s.target.box.h;
      }
      const double lb = cfg.weights.lambda_box;
      const double la = cfg.weights.lambda_acm;
      double loss = 0.0;
      if (lb != 0.0) {
        const auto [bl, hg] = box_loss_value_grad(p, s.target, cfg.kind);
        loss += lb * bl;
        dout[0] += lb * hg.fx2;
        dout[1] += lb * hg.fy2;
        dout[2] += lb * hg.fx4;
        dout[3] += lb * hg.fy4;
        box_param_grads(hg, lb);
      }
      if (la != 0.0) {
        loss += la * acl_loss(p.encoded, theta_t);
        const std::array<double, 4> ag = acl_loss_grad(p.encoded, theta_t);
        for (int i = 0; i < 4; ++i) dout[i] += la * ag[i];
      }
      return loss;
    }
  }
  return 0.0;
}

// Xavier scales the first layer by sqrt(6/(in+out)) ~ 0.3 for the 2-wide
// circle input, which keeps preactivations too narrow to reach the fourth
// harmonic within the default epoch budget. Spread the first layer over
// (-pi, pi) so the needed frequencies are representable from the start;
// deeper layers keep Xavier scaling.
inline Mlp init_net(const std::vector<int>& widths, std::uint64_t seed) {
  Mlp net = Mlp::xavier(widths, seed);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-kPi, kPi);
  for (double& v : net.layers.front().w) v = dist(rng);
  return net;
}

}  // namespace detail

inline TrainedModel train(const FitConfig& cfg) {
  if (cfg.samples < 1 || cfg.epochs < 1) throw std::invalid_argument("positive counts required");
  if (cfg.lr <= 0.0) throw std::invalid_argument("learning rate must be positive");
  const std::vector<SyntheticSample> data = generate_dataset(cfg.samples, cfg.aspect, cfg.seed);

  std::vector<int> widths;
  widths.push_back(2);
  for (int h : cfg.hidden) widths.push_back(h);
  widths.push_back(output_dim(cfg));

  TrainedModel m;
  m.cfg = cfg;
  m.net = detail::init_net(widths, cfg.seed ^ 0x6a09e667f3bcc909ULL);
  m.loss_curve.reserve(cfg.epochs);

  const double n = static_cast<double>(data.size());
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    MlpGrad g = MlpGrad::zeros_like(m.net);
    double loss_sum = 0.0;
    try {
      for (const SyntheticSample& s : data) {
        const auto acts = m.net.forward({s.input[0], s.input[1]});
        const std::vector<double>& out = acts.back();
        std::vector<double> dout(out.size(), 0.0);
        loss_sum += detail::sample_loss(cfg, s, out, dout);
        backprop(m.net, acts, dout, g);
      }
    } catch (const ZeroVector&) {
      throw DivergedTraining("angle heads collapsed to zero at epoch " + std::to_string(epoch));
    }
    const double mean_loss = loss_sum / n;
    if (!std::isfinite(mean_loss))
      throw DivergedTraining("loss became non-finite at epoch " + std::to_string(epoch));
    g.scale(1.0 / n);
    if (cfg.grad_clip > 0.0) {
      const double gn = g.norm();
      if (gn > cfg.grad_clip) g.scale(cfg.grad_clip / gn);
    }
    sgd_step(m.net, g, cfg.lr);
    m.loss_curve.push_back(mean_loss);
  }
  return m;
}

struct SweepRow {
  double phi = 0.0;
  double theta_pred = 0.0;
  double theta_target = 0.0;
  double ang_err = 0.0;
  double iou = 0.0;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  double max_err = 0.0;
  double mean_err = 0.0;
  double min_iou = 1.0;
  double breakpoint_width = 0.0;  // radians of contiguous iou<0.5 around phi=pi
};

using RawPredictor = std::function<std::vector<double>(double phi)>;

// Emits exact encodings of the target angle; the reference the trained arms
// are judged against.
inline RawPredictor oracle_predictor(double aspect) {
  return [aspect](double phi) {
    const double theta = wrap_angle(phi, symmetry_period(aspect));
    const EncodedAngle e = encode_full(theta);
    return std::vector<double>{e.fx2, e.fy2, e.fx4, e.fy4};
  };
}

inline SweepReport sweep_eval(const RawPredictor& predict, Arm arm, const FitConfig& cfg,
                              int steps, double aspect) {
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  const double period = symmetry_period(aspect);
  SweepReport rep;
  rep.rows.reserve(steps);
  double err_sum = 0.0;
  for (int i = 0; i < steps; ++i) {
    const double phi = 2.0 * kPi * i / steps;
    const SyntheticSample s = make_sample(phi, aspect);
    const std::vector<double> raw = predict(phi);
    const double theta = decode_arm(arm, raw);
    const RotatedBox bp = assemble_box(cfg, raw, theta, s.target.box);
    SweepRow r;
    r.phi = phi;
    r.theta_pred = theta;
    r.theta_target = s.target.box.theta;
    r.ang_err = angular_error(theta, r.theta_target, period);
    r.iou = skew_iou(bp, s.target.box);
    rep.max_err = std::max(rep.max_err, r.ang_err);
    rep.min_iou = std::min(rep.min_iou, r.iou);
    err_sum += r.ang_err;
    rep.rows.push_back(r);
  }
  rep.mean_err = err_sum / steps;

  // Longest contiguous run of iou<0.5 points touching the window around pi.
  const double step = 2.0 * kPi / steps;
  int best_len = 0;
  int i = 0;
  const int n = steps;
  while (i < n) {
    if (rep.rows[i].iou >= 0.5) {
      ++i;
      continue;
    }
    int j = i;
    bool near_pi = false;
    while (j < n && rep.rows[j].iou < 0.5) {
      if (std::fabs(rep.rows[j].phi - kPi) < 0.5) near_pi = true;
      ++j;
    }
    if (near_pi) best_len = std::max(best_len, j - i);
    i = j;
  }
  rep.breakpoint_width = best_len * step;
  return rep;
}

inline SweepReport sweep_eval(const TrainedModel& m, int steps, double aspect) {
  const RawPredictor f = [&m](double phi) {
    return m.net.output({std::cos(phi), std::sin(phi)});
  };
  return sweep_eval(f, m.cfg.arm, m.cfg, steps, aspect);
}

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / v.size();
}

inline double stddev_of(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / v.size());
}

struct ArmStats {
  Arm arm = Arm::fused;
  double aspect = 4.0;
  double lambda_acm = 0.2;
  std::vector<double> min_iou;  // one entry per seed
  std::vector<double> max_err;
  std::vector<double> mean_err;
  std::vector<double> breakpoint_width;
};

struct OrderingCheck {
  std::string name;
  int seeds_holding = 0;
  int seeds_total = 0;
  bool holds_on_mean = false;
  bool pass = false;
};

struct AblationReport {
  std::vector<std::uint64_t> seeds;
  std::vector<ArmStats> cells;
  std::vector<OrderingCheck> orderings;
};

namespace detail {

inline OrderingCheck pairwise_ordering(const std::string& name, const std::vector<double>& a,
                                       const std::vector<double>& b, bool strict,
                                       bool require_mean) {
  OrderingCheck c;
  c.name = name;
  c.seeds_total = static_cast<int>(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    if (strict ? a[i] > b[i] : a[i] >= b[i]) ++c.seeds_holding;
  const double ma = mean_of(a);
  const double mb = mean_of(b);
  c.holds_on_mean = strict ? ma > mb : ma >= mb;
  c.pass = 3 * c.seeds_holding >= 2 * c.seeds_total && (!require_mean || c.holds_on_mean);
  return c;
}

}  // namespace detail

// Called once per trained cell; lets callers record sweeps and timings without
// rerunning the grid.
using RunObserver = std::function<void(Arm arm, double aspect, double lambda_acm,
                                       std::uint64_t seed, const SweepReport& sweep,
                                       double seconds)>;

// Trains {direct, acm-w1, acm-w2, acm-w4, acm-fused} x aspect {4, 1} plus an
// acm-fused run with the encoding loss switched off, then evaluates the trend
// orderings the suite is meant to reproduce.
inline AblationReport ablation_suite(const std::vector<std::uint64_t>& seeds, FitConfig base = {},
                                     const RunObserver& observe = {}) {
  if (seeds.size() < 3) throw std::invalid_argument("ablation needs at least 3 seeds");

  AblationReport rep;
  rep.seeds = seeds;

  struct CellSpec {
    Arm arm;
    double aspect;
    double lambda_acm;
  };
  std::vector<CellSpec> specs;
  for (double aspect : {4.0, 1.0})
    for (Arm arm : {Arm::direct, Arm::w1, Arm::w2, Arm::w4, Arm::fused})
      specs.push_back({arm, aspect, base.weights.lambda_acm});
  specs.push_back({Arm::fused, 4.0, 0.0});

  for (const CellSpec& sp : specs) {
    ArmStats st;
    st.arm = sp.arm;
    st.aspect = sp.aspect;
    st.lambda_acm = sp.lambda_acm;
    for (std::uint64_t seed : seeds) {
      FitConfig cfg = base;
      cfg.arm = sp.arm;
      cfg.aspect = sp.aspect;
      cfg.weights.lambda_acm = sp.lambda_acm;
      cfg.seed = seed;
      const auto t0 = std::chrono::steady_clock::now();
      const TrainedModel m = train(cfg);
      const SweepReport sw = sweep_eval(m, cfg.sweep_steps, cfg.aspect);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (observe) observe(sp.arm, sp.aspect, sp.lambda_acm, seed, sw, secs);
      st.min_iou.push_back(sw.min_iou);
      st.max_err.push_back(sw.max_err);
      st.mean_err.push_back(sw.mean_err);
      st.breakpoint_width.push_back(sw.breakpoint_width);
    }
    rep.cells.push_back(std::move(st));
  }

  const auto cell = [&rep](Arm arm, double aspect, double lambda_acm) -> const ArmStats& {
    for (const ArmStats& st : rep.cells)
      if (st.arm == arm && st.aspect == aspect && st.lambda_acm == lambda_acm) return st;
    throw std::logic_error("ablation cell missing");
  };
  const double la = base.weights.lambda_acm;
  const ArmStats& r_direct = cell(Arm::direct, 4.0, la);
  const ArmStats& r_w1 = cell(Arm::w1, 4.0, la);
  const ArmStats& r_w2 = cell(Arm::w2, 4.0, la);
  const ArmStats& r_w4 = cell(Arm::w4, 4.0, la);
  const ArmStats& r_fused = cell(Arm::fused, 4.0, la);
  const ArmStats& s_w2 = cell(Arm::w2, 1.0, la);
  const ArmStats& s_w4 = cell(Arm::w4, 1.0, la);
  const ArmStats& s_fused = cell(Arm::fused, 1.0, la);
  const ArmStats& no_acl = cell(Arm::fused, 4.0, 0.0);

  rep.orderings.push_back(detail::pairwise_ordering("rect-min-iou-fused-ge-w2", r_fused.min_iou,
                                                    r_w2.min_iou, false, true));
  rep.orderings.push_back(
      detail::pairwise_ordering("rect-min-iou-w2-gt-w1", r_w2.min_iou, r_w1.min_iou, true, true));
  rep.orderings.push_back(detail::pairwise_ordering("rect-min-iou-w1-gt-direct", r_w1.min_iou,
                                                    r_direct.min_iou, true, true));

  {
    OrderingCheck c;
    c.name = "rect-w4-mean-err-ge-quarter-pi";
    c.seeds_total = static_cast<int>(seeds.size());
    for (double e : r_w4.mean_err)
      if (e >= kPi / 4.0) ++c.seeds_holding;
    c.holds_on_mean = mean_of(r_w4.mean_err) >= kPi / 4.0;
    c.pass = 3 * c.seeds_holding >= 2 * c.seeds_total && c.holds_on_mean;
    rep.orderings.push_back(c);
  }
  {
    OrderingCheck c;
    c.name = "rect-w4-worst-mean-err";
    c.seeds_total = static_cast<int>(seeds.size());
    const std::vector<const ArmStats*> others{&r_direct, &r_w1, &r_w2, &r_fused};
    for (size_t i = 0; i < seeds.size(); ++i) {
      bool worst = true;
      for (const ArmStats* o : others)
        if (r_w4.mean_err[i] < o->mean_err[i]) worst = false;
      if (worst) ++c.seeds_holding;
    }
    bool worst_mean = true;
    for (const ArmStats* o : others)
      if (mean_of(r_w4.mean_err) < mean_of(o->mean_err)) worst_mean = false;
    c.holds_on_mean = worst_mean;
    c.pass = 3 * c.seeds_holding >= 2 * c.seeds_total && c.holds_on_mean;
    rep.orderings.push_back(c);
  }

  rep.orderings.push_back(
      detail::pairwise_ordering("square-min-iou-w4-gt-w2", s_w4.min_iou, s_w2.min_iou, true, true));
  rep.orderings.push_back(detail::pairwise_ordering("square-min-iou-fused-gt-w2", s_fused.min_iou,
                                                    s_w2.min_iou, true, true));
  rep.orderings.push_back(detail::pairwise_ordering("acl-off-degrades-min-iou", r_fused.min_iou,
                                                    no_acl.min_iou, true, false));
  return rep;
}

}  // namespace acm
