// Acceptance gate: one timed pass/fail line per numbered criterion, plus two
// extra gated properties (x1, x2). Exits with the number of failing lines.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "acm/acm.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using acm::kPi;
using acm::RotatedBox;
using nlohmann::json;

namespace {

int g_failures = 0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

void criterion(const std::string& name, const std::function<Outcome()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("[%s] %s (%.1fs)%s%s\n", o.pass ? "PASS" : "FAIL", name.c_str(), secs,
              o.detail.empty() ? "" : "; ", o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++g_failures;
}

// ---------------------------------------------------------------- criterion 1

Outcome check_round_trip() {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, kPi);
  double worst12 = 0.0, worst4 = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double theta = u(rng);
    for (int omega : {1, 2}) {
      const acm::Vec2 e = acm::encode(theta, omega);
      worst12 = std::max(worst12, std::fabs(acm::decode(e.x, e.y, omega) - theta));
    }
    const acm::Vec2 e4 = acm::encode(theta, 4);
    const double expect = theta < kPi / 2.0 ? theta : theta - kPi / 2.0;
    worst4 = std::max(worst4, std::fabs(acm::decode(e4.x, e4.y, 4) - expect));
  }
  Outcome o;
  o.pass = worst12 <= 1e-9 && worst4 <= 1e-9;
  o.detail = "max residual w1/w2 " + num(worst12) + ", w4 vs truncated angle " + num(worst4);
  return o;
}

// ---------------------------------------------------------------- criterion 2

Outcome check_fusion() {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, kPi);
  std::uniform_real_distribution<double> noise(-0.05, 0.05);

  double worst_clean = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double theta = u(rng);
    worst_clean = std::max(
        worst_clean, acm::angular_error(acm::decode_full(acm::encode_full(theta)), theta, kPi));
  }

  double worst_noisy = 0.0;
  double worst_quarter = 0.0;
  double worst_interior = 0.0;  // boundary distance > 0.04
  int violations = 0;
  double nearest_violation_boundary = kPi;
  for (int i = 0; i < 10000; ++i) {
    const double theta = u(rng);
    acm::EncodedAngle e = acm::encode_full(theta);
    e.fx2 += noise(rng);
    e.fy2 += noise(rng);
    e.fx4 += noise(rng);
    e.fy4 += noise(rng);
    const double fused = acm::decode_full(e);
    const double err_half = acm::angular_error(fused, theta, kPi);
    const double err_quarter = acm::angular_error(fused, theta, kPi / 2.0);
    const double boundary = std::min(theta, kPi - theta);
    worst_noisy = std::max(worst_noisy, err_half);
    worst_quarter = std::max(worst_quarter, err_quarter);
    if (boundary > 0.04) worst_interior = std::max(worst_interior, err_half);
    if (err_half >= 0.08) {
      ++violations;
      nearest_violation_boundary = std::min(nearest_violation_boundary, boundary);
    }
  }

  Outcome o;
  const bool strict_ok = worst_clean <= 1e-9;
  const bool noisy_ok = worst_noisy < 0.08;
  o.pass = strict_ok && noisy_ok;
  std::ostringstream d;
  d << "clean max err " << num(worst_clean) << "; noisy max err " << num(worst_noisy) << " with "
    << violations << " points over 0.08";
  if (violations > 0)
    d << " (nearest violation sits " << num(nearest_violation_boundary)
      << " rad from a period boundary, where noise can wrap one channel but not the other)";
  d << "; quarter-period err " << num(worst_quarter)
    << " and interior (boundary gap > 0.04) err " << num(worst_interior)
    << " both stay under 0.08";
  o.detail = d.str();
  return o;
}

// ---------------------------------------------------------------- criterion 3

Outcome check_skew_iou() {
  std::mt19937_64 rng(13);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    RotatedBox a = testutil::random_box(rng);
    RotatedBox b = testutil::random_box(rng);
    b.cx = a.cx + (b.cx - a.cx) * 0.4;
    b.cy = a.cy + (b.cy - a.cy) * 0.4;
    worst = std::max(worst,
                     std::fabs(acm::skew_iou(a, b) - testutil::raster_iou(a, b, 1000)));
  }
  const RotatedBox s{0.4, -0.7, 2.0, 1.0, 0.8};
  const bool ident = acm::skew_iou(s, s) == 1.0;
  const double off = acm::skew_iou({0, 0, 1, 1, 0}, {0.5, 0, 1, 1, 0});
  const double diag = acm::skew_iou({0, 0, 1, 1, 0}, {0, 0, 1, 1, kPi / 4.0});
  Outcome o;
  o.pass = worst < 5e-3 && ident && std::fabs(off - 1.0 / 3.0) <= 1e-12 &&
           std::fabs(diag - 0.7071067811865475) <= 1e-9;
  o.detail = "max raster gap " + num(worst) + "; identical exact " +
             (ident ? "yes" : "NO") + "; half overlap gap " + num(std::fabs(off - 1.0 / 3.0)) +
             "; crossed squares gap " + num(std::fabs(diag - 0.7071067811865475));
  return o;
}

// ---------------------------------------------------------------- criterion 4

Outcome check_gaussian_pins() {
  std::mt19937_64 rng(14);
  double worst_ident = 0.0;
  for (int i = 0; i < 200; ++i) {
    const acm::Gaussian2 g = acm::box_to_gaussian(testutil::random_box(rng));
    worst_ident = std::max(worst_ident, std::max(acm::gwd(g, g), acm::kld(g, g)));
  }
  const double gwd_off =
      acm::gwd(acm::box_to_gaussian({0, 0, 3, 1, 0.7}), acm::box_to_gaussian({0.6, -0.8, 3, 1, 0.7}));
  const double gwd_swap = acm::gwd(acm::box_to_gaussian({0, 0, 4, 2, 0}),
                                   acm::box_to_gaussian({0, 0, 4, 2, kPi / 2.0}));
  const double kld_swap = acm::kld(acm::box_to_gaussian({0, 0, 4, 2, 0}),
                                   acm::box_to_gaussian({0, 0, 4, 2, kPi / 2.0}));
  const acm::Gaussian2 k = acm::box_to_gaussian({1, 1, 2.4, 0.9, 0.3});
  const double kf = acm::kfiou(k, k);

  double worst_sqrt = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const acm::SymMat2 m = testutil::random_spd(rng);
    const acm::SymMat2 r = acm::sqrt_spd(m);
    const acm::SymMat2 e = testutil::eigen_sqrt(m);
    worst_sqrt = std::max({worst_sqrt, std::fabs(r.xx - e.xx), std::fabs(r.xy - e.xy),
                           std::fabs(r.yy - e.yy)});
  }

  Outcome o;
  o.pass = worst_ident <= 1e-12 && std::fabs(gwd_off - 1.0) <= 1e-12 &&
           std::fabs(gwd_swap - 2.0) <= 1e-9 && std::fabs(kld_swap - 1.125) <= 1e-9 &&
           std::fabs(kf - 1.0 / 3.0) <= 1e-12 && worst_sqrt < 1e-10;
  o.detail = "identity " + num(worst_ident) + "; offset gap " + num(std::fabs(gwd_off - 1.0)) +
             "; swap gaps " + num(std::fabs(gwd_swap - 2.0)) + "/" +
             num(std::fabs(kld_swap - 1.125)) + "; kf third gap " +
             num(std::fabs(kf - 1.0 / 3.0)) + "; sqrt vs eigen " + num(worst_sqrt);
  return o;
}

// ---------------------------------------------------------------- criterion 5

double rel_gap(double a, double f) {
  return std::fabs(a - f) / std::max({std::fabs(a), std::fabs(f), 1e-3});
}

Outcome check_gradients() {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> th(0.0, kPi);
  std::uniform_real_distribution<double> pert(-0.6, 0.6);
  std::uniform_real_distribution<double> prob(0.05, 0.95);
  std::uniform_real_distribution<double> pos(-2.0, 2.0);
  std::uniform_real_distribution<double> len(0.6, 3.0);
  std::uniform_real_distribution<double> small(-0.2, 0.2);
  double worst = 0.0;
  std::string worst_where = "none";
  const auto note = [&](double gap, const char* where) {
    if (gap > worst) {
      worst = gap;
      worst_where = where;
    }
  };

  // acl_loss over its four inputs, away from the smooth-l1 kink.
  int done = 0;
  while (done < 100) {
    const double target = th(rng);
    acm::EncodedAngle p = acm::encode_full(th(rng));
    double* f[4] = {&p.fx2, &p.fy2, &p.fx4, &p.fy4};
    for (double* c : f) *c += pert(rng);
    const acm::EncodedAngle t = acm::encode_full(target);
    const double diffs[4] = {p.fx2 - t.fx2, p.fy2 - t.fy2, p.fx4 - t.fx4, p.fy4 - t.fy4};
    bool near_kink = false;
    for (double d : diffs) near_kink |= std::fabs(std::fabs(d) - 1.0) < 1e-3;
    if (near_kink) continue;
    const std::array<double, 4> g = acm::acl_loss_grad(p, target);
    for (int i = 0; i < 4; ++i) {
      const double fd = testutil::central_diff(
          [&](double x) {
            acm::EncodedAngle q = p;
            double* qf[4] = {&q.fx2, &q.fy2, &q.fx4, &q.fy4};
            *qf[i] = x;
            return acm::acl_loss(q, target);
          },
          *f[i]);
      note(rel_gap(g[i], fd), "acl");
    }
    ++done;
  }

  for (int i = 0; i < 100; ++i) {
    const double p = prob(rng);
    const int ct = i % 2;
    const double fd =
        testutil::central_diff([&](double x) { return acm::focal_loss(x, ct); }, p);
    note(rel_gap(acm::focal_loss_grad(p, ct), fd), "focal");
  }

  for (acm::LossKind kind : {acm::LossKind::gwd, acm::LossKind::kld, acm::LossKind::kfiou}) {
    done = 0;
    while (done < 100) {
      acm::TargetRecord t{1, testutil::random_box(rng)};
      acm::PredictionHead p;
      p.c_p = 0.7;
      p.cx = pos(rng);
      p.cy = pos(rng);
      p.w = len(rng);
      p.h = len(rng);
      p.encoded = acm::encode_full(th(rng));
      p.encoded.fx2 += small(rng);
      p.encoded.fy2 += small(rng);
      p.encoded.fx4 += small(rng);
      p.encoded.fy4 += small(rng);
      const acm::EncodedAngle& e = p.encoded;
      if (e.fx2 > 0.0 && std::fabs(e.fy2) < 1e-3) continue;
      if (e.fx4 > 0.0 && std::fabs(e.fy4) < 1e-3) continue;
      if (std::hypot(e.fx2, e.fy2) < 0.1 || std::hypot(e.fx4, e.fy4) < 0.1) continue;
      const double t2 = acm::decode(e.fx2, e.fy2, 2);
      const double t4 = acm::decode(e.fx4, e.fy4, 4);
      if (std::fabs(t2 - t4 - kPi / 4.0) <= 0.02) continue;  // fusion branch flip zone
      const acm::HeadGrad g = acm::box_loss_grad(p, t, kind);
      const double an[8] = {g.cx, g.cy, g.w, g.h, g.fx2, g.fy2, g.fx4, g.fy4};
      const double at[8] = {p.cx, p.cy, p.w, p.h, e.fx2, e.fy2, e.fx4, e.fy4};
      for (int c = 0; c < 8; ++c) {
        const double fd = testutil::central_diff(
            [&](double x) {
              acm::PredictionHead q = p;
              double* qf[8] = {&q.cx,          &q.cy,          &q.w,           &q.h,
                               &q.encoded.fx2, &q.encoded.fy2, &q.encoded.fx4, &q.encoded.fy4};
              *qf[c] = x;
              return acm::box_loss(q, t, kind);
            },
            at[c]);
        note(rel_gap(an[c], fd), acm::to_string(kind));
      }
      ++done;
    }
  }

  Outcome o;
  o.pass = worst < 1e-4;
  o.detail = "worst relative gap " + num(worst) + " (" + worst_where +
             "); denominator floored at 1e-3";
  return o;
}

// ------------------------------------------------------- criteria 6, 7, 8, x1, x2

struct RunRecord {
  acm::Arm arm;
  double aspect;
  double lambda_acm;
  std::uint64_t seed;
  acm::SweepReport sweep;
  double secs;
};

const RunRecord* find_run(const std::vector<RunRecord>& runs, acm::Arm arm, double aspect,
                          double lambda, std::uint64_t seed) {
  for (const RunRecord& r : runs)
    if (r.arm == arm && r.aspect == aspect && r.lambda_acm == lambda && r.seed == seed) return &r;
  return nullptr;
}

const acm::OrderingCheck* find_ordering(const acm::AblationReport& rep, const std::string& name) {
  for (const acm::OrderingCheck& c : rep.orderings)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

int main() {
  criterion("1 angle round trip", check_round_trip);
  criterion("2 frequency fusion", check_fusion);
  criterion("3 skew iou oracle equivalence", check_skew_iou);
  criterion("4 gaussian distance pins", check_gaussian_pins);
  criterion("5 gradient contract", check_gradients);

  // One full-budget ablation backs criteria 6 through 8 and both extras.
  std::vector<RunRecord> runs;
  acm::AblationReport ablation;
  std::string ablation_error;
  {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ablation = acm::ablation_suite(
          {1, 2, 3}, acm::FitConfig{},
          [&runs](acm::Arm arm, double aspect, double lambda, std::uint64_t seed,
                  const acm::SweepReport& sw, double secs) {
            runs.push_back({arm, aspect, lambda, seed, sw, secs});
          });
    } catch (const std::exception& e) {
      ablation_error = e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("(ablation grid: %zu runs in %.1fs%s%s)\n", runs.size(), secs,
                ablation_error.empty() ? "" : "; error ", ablation_error.c_str());
    std::fflush(stdout);
  }
  const double default_lambda = acm::FitConfig{}.weights.lambda_acm;

  criterion("6 boundary failure and acm fix", [&]() -> Outcome {
    if (!ablation_error.empty()) return {false, "ablation failed: " + ablation_error};
    Outcome o;
    o.pass = true;
    std::ostringstream d;
    double window_worst = 1.0, w2_iou = 1.0, w2_err = 0.0, total_secs = 0.0;
    for (std::uint64_t seed : {1, 2, 3}) {
      const RunRecord* direct = find_run(runs, acm::Arm::direct, 4.0, default_lambda, seed);
      const RunRecord* w2 = find_run(runs, acm::Arm::w2, 4.0, default_lambda, seed);
      if (!direct || !w2) return {false, "missing grid cells"};
      double window_min = 1.0;
      for (const acm::SweepRow& r : direct->sweep.rows)
        if (r.phi > kPi - 0.2 && r.phi < kPi + 0.2) window_min = std::min(window_min, r.iou);
      window_worst = std::min(window_worst, window_min);
      if (!(window_min < 0.5)) o.pass = false;
      if (!(w2->sweep.min_iou > 0.9 && w2->sweep.max_err < 5.0 * kPi / 180.0)) o.pass = false;
      w2_iou = std::min(w2_iou, w2->sweep.min_iou);
      w2_err = std::max(w2_err, w2->sweep.max_err);
      total_secs += direct->secs + w2->secs;
    }
    if (!(total_secs < 300.0)) o.pass = false;
    d << "direct min iou near the wrap " << num(window_worst) << "; w2 min iou " << num(w2_iou)
      << " and max err " << num(w2_err * 180.0 / kPi) << " deg; 6 runs in "
      << num(total_secs) << "s";
    o.detail = d.str();
    return o;
  });

  criterion("7 arm ordering trends", [&]() -> Outcome {
    if (!ablation_error.empty()) return {false, "ablation failed: " + ablation_error};
    const char* names[7] = {"rect-min-iou-fused-ge-w2",   "rect-min-iou-w2-gt-w1",
                            "rect-min-iou-w1-gt-direct",  "rect-w4-mean-err-ge-quarter-pi",
                            "rect-w4-worst-mean-err",     "square-min-iou-w4-gt-w2",
                            "square-min-iou-fused-gt-w2"};
    Outcome o;
    o.pass = true;
    std::string failing;
    for (const char* n : names) {
      const acm::OrderingCheck* c = find_ordering(ablation, n);
      if (!c) return {false, std::string("missing ordering ") + n};
      if (!c->pass) {
        o.pass = false;
        failing += std::string(failing.empty() ? "" : ", ") + n + " (" +
                   std::to_string(c->seeds_holding) + "/" + std::to_string(c->seeds_total) +
                   ", mean " + (c->holds_on_mean ? "yes" : "no") + ")";
      }
    }
    o.detail = o.pass ? "all 7 orderings hold on 2 of 3 seeds and on the mean"
                      : "failing: " + failing;
    return o;
  });

  criterion("8 encoding loss ablation", [&]() -> Outcome {
    if (!ablation_error.empty()) return {false, "ablation failed: " + ablation_error};
    const acm::OrderingCheck* c = find_ordering(ablation, "acl-off-degrades-min-iou");
    if (!c) return {false, "missing ordering"};
    std::ostringstream d;
    d << "lambda 0 worse on " << c->seeds_holding << " of " << c->seeds_total << " seeds";
    double on_err = 0.0, off_err = 0.0;
    d << "; per-seed min iou on/off:";
    for (std::uint64_t seed : {1, 2, 3}) {
      const RunRecord* on = find_run(runs, acm::Arm::fused, 4.0, default_lambda, seed);
      const RunRecord* off = find_run(runs, acm::Arm::fused, 4.0, 0.0, seed);
      if (!on || !off) return {false, "missing grid cells"};
      char buf[64];
      std::snprintf(buf, sizeof buf, " %.6f/%.6f", on->sweep.min_iou, off->sweep.min_iou);
      d << buf;
      on_err += on->sweep.mean_err / 3.0;
      off_err += off->sweep.mean_err / 3.0;
    }
    d << "; mean angular err on/off " << num(on_err) << "/" << num(off_err);
    return {c->pass, d.str()};
  });

  criterion("9 average precision evaluator", []() -> Outcome {
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<int> img(0, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> wobble(-0.8, 0.8);
    double worst = 0.0;
    bool monotone = true;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<acm::GroundTruth> gts;
      std::vector<acm::Detection> dets;
      const int n_gts = 2 + static_cast<int>(unit(rng) * 6);
      for (int g = 0; g < n_gts; ++g) {
        RotatedBox b = testutil::random_box(rng);
        b.cx *= 3.0;
        b.cy *= 3.0;
        gts.push_back({"im" + std::to_string(img(rng)), 0, b, unit(rng) < 0.2});
      }
      for (int d = 0; d < 50; ++d) {
        const acm::GroundTruth& base = gts[static_cast<std::size_t>(unit(rng) * gts.size())];
        RotatedBox b = base.box;
        b.cx += wobble(rng);
        b.cy += wobble(rng);
        b.theta += 0.3 * wobble(rng);
        const std::string image =
            unit(rng) < 0.85 ? base.image_id : "im" + std::to_string(img(rng));
        dets.push_back({image, 0, unit(rng), b});
      }
      double prev = 1.0 + 1e-12;
      for (int k = 0; k < 10; ++k) {
        const double t = (50 + 5 * k) / 100.0;
        const double fast = acm::average_precision(dets, gts, t);
        worst = std::max(worst, std::fabs(fast - testutil::brute_force_ap(dets, gts, t)));
        if (fast > prev + 1e-12) monotone = false;
        prev = fast;
      }
    }
    const RotatedBox a{0, 0, 2, 1, 0.3};
    const std::vector<acm::GroundTruth> pin_gts{{"i", 0, a, false}};
    const std::vector<acm::Detection> pin_dets{{"i", 0, 0.9, {9, 9, 2, 1, 0.3}},
                                               {"i", 0, 0.5, a}};
    const double pin = acm::average_precision(pin_dets, pin_gts, 0.5);
    Outcome o;
    o.pass = worst <= 1e-9 && std::fabs(pin - 0.5) <= 1e-12 && monotone;
    o.detail = "max oracle gap " + num(worst) + "; outranked pin gap " +
               num(std::fabs(pin - 0.5)) + "; threshold monotone " + (monotone ? "yes" : "NO");
    return o;
  });

  criterion("10 command determinism", []() -> Outcome {
    const fs::path root = fs::path("acceptance_scratch");
    fs::remove_all(root);
    fs::create_directories(root);
    const std::string fixture =
#ifdef ACM_SOURCE_DIR
        std::string(ACM_SOURCE_DIR) + "/tests/fixtures/eval";
#else
        "tests/fixtures/eval";
#endif
    testutil::write_text(root / "fit_config.json",
                         R"({"arm": "acm-w2", "samples": 24, "epochs": 60,)"
                         R"( "sweep_steps": 36, "hidden": [8], "seed": 5})");
    const std::vector<std::pair<std::string, std::string>> cmds = {
        {"encode", "encode --theta-deg 90 --omega 2"},
        {"iou", "iou --box-a 0,0,4,2,30 --box-b 0.5,0,4,2,60"},
        {"sweep_oracle", "sweep --arm oracle --steps 24 --svg --format json"},
        {"sweep_trained", "sweep --arm acm-w2 --epochs 40 --samples 24 --steps 24"},
        {"fit", "fit --config " + (root / "fit_config.json").string()},
        {"ablate", "ablate --seeds 3 --epochs 8 --samples 16 --sweep-steps 16"},
        {"eval", "eval --dets " + fixture + "/dets.csv --gts " + fixture + "/gts"},
    };
    Outcome o;
    o.pass = true;
    std::string bad;
    for (const auto& [name, args] : cmds) {
      const fs::path a = root / (name + "_a");
      const fs::path b = root / (name + "_b");
      const testutil::CmdResult ra =
          testutil::run_cmd(testutil::cli_path() + " --out-dir " + a.string() + " " + args);
      const testutil::CmdResult rb =
          testutil::run_cmd(testutil::cli_path() + " --out-dir " + b.string() + " " + args);
      bool ok = ra.exit_code == 0 && rb.exit_code == 0 && ra.out == rb.out;
      if (ok) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(a))
          if (entry.is_regular_file() && entry.path().filename() != "manifest.json")
            files.push_back(entry.path().filename());
        std::sort(files.begin(), files.end());
        for (const fs::path& f : files)
          ok = ok && fs::exists(b / f) && testutil::files_equal(a / f, b / f);
        if (files.empty() && name != "encode" && name != "iou") ok = false;
      }
      if (!ok) {
        o.pass = false;
        bad += (bad.empty() ? "" : ", ") + name;
      }
    }
    o.detail = o.pass ? "7 command pairs byte-identical (manifest timestamps excluded)"
                      : "differing or failing: " + bad;
    return o;
  });

  criterion("x1 fused beats direct on angle-sensitive ap75", [&]() -> Outcome {
    if (!ablation_error.empty()) return {false, "ablation failed: " + ablation_error};
    const auto pooled_ap75 = [&](acm::Arm arm) {
      std::vector<acm::Detection> dets;
      std::vector<acm::GroundTruth> gts;
      for (std::uint64_t seed : {1, 2, 3}) {
        const RunRecord* r = find_run(runs, arm, 4.0, default_lambda, seed);
        if (!r) return -1.0;
        for (std::size_t i = 0; i < r->sweep.rows.size(); ++i) {
          const acm::SweepRow& row = r->sweep.rows[i];
          const RotatedBox target = acm::make_sample(row.phi, 4.0).target.box;
          const std::string image = "s" + std::to_string(seed) + "p" + std::to_string(i);
          gts.push_back({image, 0, target, false});
          dets.push_back(
              {image, 0, 1.0, {target.cx, target.cy, target.w, target.h, row.theta_pred}});
        }
      }
      return acm::average_precision(dets, gts, 0.75);
    };
    const double fused = pooled_ap75(acm::Arm::fused);
    const double direct = pooled_ap75(acm::Arm::direct);
    Outcome o;
    o.pass = fused >= 0.0 && direct >= 0.0 && fused > direct;
    o.detail = "ap75 fused " + num(fused) + " vs direct " + num(direct);
    return o;
  });

  criterion("x2 default training budget", [&]() -> Outcome {
    if (!ablation_error.empty()) return {false, "ablation failed: " + ablation_error};
    const RunRecord* r = find_run(runs, acm::Arm::fused, 4.0, default_lambda, 1);
    if (!r) return {false, "missing default-config cell"};
    return {r->secs < 120.0, "default config trained and swept in " + num(r->secs) + "s"};
  });

  std::printf("%d of 12 checks failing\n", g_failures);
  return g_failures > 100 ? 100 : g_failures;
}
