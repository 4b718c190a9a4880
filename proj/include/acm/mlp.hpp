#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace acm {

struct MlpLayer {
  int in = 0;
  int out = 0;
  std::vector<double> w;  // row-major, out x in
  std::vector<double> b;
};

// Small dense network, tanh hidden units, linear output layer.
struct Mlp {
  std::vector<int> widths;
  std::vector<MlpLayer> layers;

  int input_dim() const { return widths.front(); }
  int output_dim() const { return widths.back(); }

  static Mlp xavier(const std::vector<int>& widths, std::uint64_t seed) {
    if (widths.size() < 2) throw std::invalid_argument("network needs at least two layers");
    Mlp m;
    m.widths = widths;
    std::mt19937_64 rng(seed);
    for (size_t l = 0; l + 1 < widths.size(); ++l) {
      MlpLayer layer;
      layer.in = widths[l];
      layer.out = widths[l + 1];
      const double bound = std::sqrt(6.0 / (layer.in + layer.out));
      std::uniform_real_distribution<double> dist(-bound, bound);
      layer.w.resize(static_cast<size_t>(layer.in) * layer.out);
      layer.b.assign(layer.out, 0.0);
      for (double& v : layer.w) v = dist(rng);
      m.layers.push_back(std::move(layer));
    }
    return m;
  }

  // Activations per layer: acts[0] is the input, acts[L] the linear output.
  std::vector<std::vector<double>> forward(const std::vector<double>& x) const {
    std::vector<std::vector<double>> acts;
    acts.reserve(layers.size() + 1);
    acts.push_back(x);
    for (size_t l = 0; l < layers.size(); ++l) {
      const MlpLayer& layer = layers[l];
      const std::vector<double>& a = acts.back();
      std::vector<double> z(layer.out);
      for (int o = 0; o < layer.out; ++o) {
        double s = layer.b[o];
        const double* row = layer.w.data() + static_cast<size_t>(o) * layer.in;
        for (int i = 0; i < layer.in; ++i) s += row[i] * a[i];
        z[o] = s;
      }
      if (l + 1 < layers.size())
        for (double& v : z) v = std::tanh(v);
      acts.push_back(std::move(z));
    }
    return acts;
  }

  std::vector<double> output(const std::vector<double>& x) const { return forward(x).back(); }
};

struct MlpGrad {
  std::vector<std::vector<double>> w;
  std::vector<std::vector<double>> b;

  static MlpGrad zeros_like(const Mlp& m) {
    MlpGrad g;
    for (const MlpLayer& l : m.layers) {
      g.w.emplace_back(l.w.size(), 0.0);
      g.b.emplace_back(l.b.size(), 0.0);
    }
    return g;
  }

  void scale(double s) {
    for (auto& v : w)
      for (double& x : v) x *= s;
    for (auto& v : b)
      for (double& x : v) x *= s;
  }

  double norm() const {
    double s = 0.0;
    for (const auto& v : w)
      for (double x : v) s += x * x;
    for (const auto& v : b)
      for (double x : v) s += x * x;
    return std::sqrt(s);
  }
};

// Accumulates d(loss)/d(params) into g given the forward activations and
// d(loss)/d(output). Hidden activations are tanh, so da/dz = 1 - a^2.
inline void backprop(const Mlp& m, const std::vector<std::vector<double>>& acts,
                     const std::vector<double>& dout, MlpGrad& g) {
  std::vector<double> delta = dout;
  for (int l = static_cast<int>(m.layers.size()) - 1; l >= 0; --l) {
    const MlpLayer& layer = m.layers[l];
    const std::vector<double>& a_prev = acts[l];
    for (int o = 0; o < layer.out; ++o) {
      const double d = delta[o];
      g.b[l][o] += d;
      double* grow = g.w[l].data() + static_cast<size_t>(o) * layer.in;
      for (int i = 0; i < layer.in; ++i) grow[i] += d * a_prev[i];
    }
    if (l == 0) break;
    std::vector<double> dprev(layer.in, 0.0);
    for (int o = 0; o < layer.out; ++o) {
      const double d = delta[o];
      const double* row = layer.w.data() + static_cast<size_t>(o) * layer.in;
      for (int i = 0; i < layer.in; ++i) dprev[i] += d * row[i];
    }
    for (int i = 0; i < layer.in; ++i) dprev[i] *= 1.0 - a_prev[i] * a_prev[i];
    delta = std::move(dprev);
  }
}

inline void sgd_step(Mlp& m, const MlpGrad& g, double lr) {
  for (size_t l = 0; l < m.layers.size(); ++l) {
    for (size_t i = 0; i < m.layers[l].w.size(); ++i) m.layers[l].w[i] -= lr * g.w[l][i];
    for (size_t i = 0; i < m.layers[l].b.size(); ++i) m.layers[l].b[i] -= lr * g.b[l][i];
  }
}

}  // namespace acm
