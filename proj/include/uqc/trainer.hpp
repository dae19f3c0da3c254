// Copyright 2026 The uqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "uqc/data.hpp"
#include "uqc/errors.hpp"
#include "uqc/model.hpp"
#include "uqc/qmath.hpp"
#include "uqc/rng.hpp"

// Fidelity-cost training. The cost of a batch is the mean of
// (1 - |<Y_c|psi(x)>|^2) over its points; the sum form scales the gradient
// by a constant, which Adam absorbs, so the mean keeps cost values
// comparable across batch sizes without changing the dynamics. Gradients
// are exact: reverse-mode through the chain of 2x2 rotations using the
// closed-form derivatives d rz(t)/dt = -(i/2) Z rz(t) and
// d ry(t)/dt = -(i/2) Y ry(t).

namespace uqc {

struct AdamConfig {
  double learning_rate = 0.6;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

inline void validate(const AdamConfig& cfg) {
  if (!(cfg.learning_rate > 0.0)) throw ValidationError("adam: learning_rate must be > 0");
  if (!(cfg.beta1 >= 0.0 && cfg.beta1 < 1.0)) throw ValidationError("adam: beta1 must be in [0, 1)");
  if (!(cfg.beta2 >= 0.0 && cfg.beta2 < 1.0)) throw ValidationError("adam: beta2 must be in [0, 1)");
  if (!(cfg.epsilon > 0.0)) throw ValidationError("adam: epsilon must be > 0");
}

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  std::uint64_t t = 0;

  explicit AdamState(std::size_t num_params = 0) : m(num_params, 0.0), v(num_params, 0.0) {}
};

struct TrainConfig {
  int epochs = 20;
  int batch_size = 100;
  std::uint64_t shuffle_seed = 0;
};

struct TrainMetrics {
  std::vector<std::vector<double>> batch_costs;  // one inner vector per epoch
  std::vector<double> test_accuracy;             // one entry per epoch
  std::vector<double> seconds;                   // wall clock per epoch

  double mean_batch_cost(std::size_t epoch) const {
    const auto& costs = batch_costs.at(epoch);
    double sum = 0.0;
    for (double c : costs) sum += c;
    return sum / static_cast<double>(costs.size());
  }
};

namespace detail {

// Per-layer intermediate states of the forward pass:
// s1 = rz(v1) s0, s2 = ry(v2) s1, s3 = rz(v3) s2.
struct LayerTrace {
  double v[3];
  PureState s1, s2, s3;
};

inline PureState apply_z(PureState s) { return {s.a0, -s.a1}; }
inline PureState apply_y(PureState s) {
  return {cplx(0.0, -1.0) * s.a1, cplx(0.0, 1.0) * s.a0};
}

// Adds the gradient of (1 - |<Y|psi(x)>|^2) to g (laid out flat, 5 per
// layer: theta1, theta2, omega1, omega2, omega3), scaled by `weight`.
// Returns the point's fidelity term 1 - F.
inline double accumulate_point_grad(const UqcParams& params, Point2 x, const PureState& label,
                                    double weight, std::span<double> g) {
  const std::size_t num_layers = params.layers.size();
  static thread_local std::vector<LayerTrace> trace;
  trace.resize(num_layers);

  PureState s = PureState{};
  for (std::size_t l = 0; l < num_layers; ++l) {
    auto& tr = trace[l];
    layer_angles(params.layers[l], x, tr.v);
    tr.s1 = apply(rz(tr.v[0]), s);
    tr.s2 = apply(ry(tr.v[1]), tr.s1);
    tr.s3 = apply(rz(tr.v[2]), tr.s2);
    s = tr.s3;
  }

  const cplx z = inner(label, s);
  const double fid = std::norm(z);

  // Back-propagate the bra: phi_L = |Y>, phi_{l-1} = U_l^dag phi_l. At each
  // layer, dz/dv_k = -(i/2) <t_k | A_k s_k> with A = (Z, Y, Z).
  PureState phi = label;
  for (std::size_t li = num_layers; li-- > 0;) {
    const auto& tr = trace[li];
    const PureState t3 = phi;
    const PureState t2 = apply(dagger(rz(tr.v[2])), t3);
    const PureState t1 = apply(dagger(ry(tr.v[1])), t2);
    phi = apply(dagger(rz(tr.v[0])), t1);

    const cplx half_i(0.0, 0.5);
    const cplx dz_dv1 = -half_i * inner(t1, apply_z(tr.s1));
    const cplx dz_dv2 = -half_i * inner(t2, apply_y(tr.s2));
    const cplx dz_dv3 = -half_i * inner(t3, apply_z(tr.s3));

    // d(1-F)/dv = -2 Re(conj(z) dz/dv); chain through v1 = theta1*x1 +
    // omega1, v2 = theta2*x2 + omega2, v3 = omega3.
    const double d1 = -2.0 * std::real(std::conj(z) * dz_dv1) * weight;
    const double d2 = -2.0 * std::real(std::conj(z) * dz_dv2) * weight;
    const double d3 = -2.0 * std::real(std::conj(z) * dz_dv3) * weight;

    double* gl = g.data() + li * kParamsPerLayer;
    gl[0] += x.x1 * d1;
    gl[1] += x.x2 * d2;
    gl[2] += d1;
    gl[3] += d2;
    gl[4] += d3;
  }
  return 1.0 - fid;
}

}  // namespace detail

/// Mean fidelity cost and its exact gradient in one pass.
inline double cost_and_grad(const UqcParams& params, std::span<const LabeledPoint> batch,
                            const std::vector<PureState>& labels, std::vector<double>& g) {
  if (batch.empty()) throw ValidationError("cost: batch is empty");
  const std::size_t num_params = params.layers.size() * kParamsPerLayer;
  g.assign(num_params, 0.0);
  const double weight = 1.0 / static_cast<double>(batch.size());
  double total = 0.0;
  for (const auto& lp : batch) {
    total += detail::accumulate_point_grad(params, lp.point, labels.at(lp.label), weight, g);
  }
  return total * weight;
}

inline double cost(const UqcParams& params, std::span<const LabeledPoint> batch,
                   const std::vector<PureState>& labels) {
  if (batch.empty()) throw ValidationError("cost: batch is empty");
  double total = 0.0;
  for (const auto& lp : batch) {
    const cplx z = inner(labels.at(lp.label), forward_state(params, lp.point));
    total += 1.0 - std::norm(z);
  }
  return total / static_cast<double>(batch.size());
}

inline std::vector<double> grad(const UqcParams& params, std::span<const LabeledPoint> batch,
                                const std::vector<PureState>& labels) {
  std::vector<double> g;
  cost_and_grad(params, batch, labels, g);
  return g;
}

/// One bias-corrected Adam update, in place. Increments state.t.
inline void adam_step(AdamState& state, std::span<const double> g, std::vector<double>& params,
                      const AdamConfig& cfg) {
  if (g.size() != params.size() || state.m.size() != params.size()) {
    throw ValidationError("adam_step: dimension mismatch (gradient " + std::to_string(g.size()) +
                          ", params " + std::to_string(params.size()) + ", state " +
                          std::to_string(state.m.size()) + ")");
  }
  state.t += 1;
  const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * g[i];
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
    const double m_hat = state.m[i] / c1;
    const double v_hat = state.v[i] / c2;
    params[i] -= cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon);
  }
}

/// Fraction of points whose predicted class equals the ground truth.
template <typename ClassifyFn>
double evaluate_accuracy(const std::vector<LabeledPoint>& points, ClassifyFn&& classify) {
  if (points.empty()) throw ValidationError("evaluate_accuracy: dataset is empty");
  std::size_t correct = 0;
  for (const auto& lp : points) {
    if (classify(lp.point) == lp.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(points.size());
}

inline double evaluate_accuracy_exact(const UqcParams& params, const Dataset& dataset) {
  const auto labels = label_blochs(params.num_classes);
  return evaluate_accuracy(dataset.points,
                           [&](Point2 x) { return classify_exact(params, x, labels); });
}

/// Full training loop: init uniform on [-pi, pi], per-epoch reshuffle from
/// shuffle_seed, batched Adam updates, per-epoch exact test accuracy.
/// Deterministic given (data, init, shuffle) seeds.
inline std::pair<UqcParams, TrainMetrics> train(const Dataset& train_set, const Dataset& test_set,
                                                int num_layers, const AdamConfig& acfg,
                                                const TrainConfig& tcfg, std::uint64_t init_seed) {
  validate(acfg);
  if (train_set.problem != test_set.problem) {
    throw ValidationError(std::string("train: train set is '") + problem_name(train_set.problem) +
                          "' but test set is '" + problem_name(test_set.problem) + "'");
  }
  if (tcfg.epochs < 1) throw ValidationError("train: epochs must be >= 1");
  const std::size_t n = train_set.points.size();
  if (tcfg.batch_size < 1 || static_cast<std::size_t>(tcfg.batch_size) > n) {
    throw ValidationError("train: batch_size must be in [1, " + std::to_string(n) + "]");
  }

  const int classes = num_classes(train_set.problem);
  UqcParams params = init_params(num_layers, classes, init_seed);
  const auto states = label_states(classes);

  std::vector<double> flat = flatten(params);
  AdamState adam(flat.size());
  std::vector<double> g;
  TrainMetrics metrics;

  std::vector<LabeledPoint> batch;
  batch.reserve(tcfg.batch_size);

  for (int epoch = 0; epoch < tcfg.epochs; ++epoch) {
    const auto start = std::chrono::steady_clock::now();
    const auto order = shuffled_indices(n, derive_stream(tcfg.shuffle_seed, epoch));
    std::vector<double> epoch_costs;

    for (std::size_t begin = 0; begin < n; begin += tcfg.batch_size) {
      const std::size_t end = std::min(begin + tcfg.batch_size, n);
      batch.clear();
      for (std::size_t i = begin; i < end; ++i) batch.push_back(train_set.points[order[i]]);
      epoch_costs.push_back(cost_and_grad(params, batch, states, g));
      adam_step(adam, g, flat, acfg);
      params = unflatten(flat, classes);
    }

    metrics.batch_costs.push_back(std::move(epoch_costs));
    metrics.test_accuracy.push_back(evaluate_accuracy_exact(params, test_set));
    metrics.seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return {params, metrics};
}

/// JSON-lines metrics, one record per epoch. `include_seconds=false` drops
/// the wall-clock field so that repeated runs produce byte-identical files.
inline void save_metrics(const TrainMetrics& metrics, const std::filesystem::path& path,
                         bool include_seconds = true) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("save_metrics: cannot open '" + path.string() + "' for writing");
  for (std::size_t e = 0; e < metrics.test_accuracy.size(); ++e) {
    nlohmann::json j;
    j["epoch"] = e + 1;
    j["mean_batch_cost"] = metrics.mean_batch_cost(e);
    j["test_accuracy"] = metrics.test_accuracy[e];
    if (include_seconds) j["seconds"] = metrics.seconds[e];
    out << j.dump() << "\n";
  }
  if (!out) throw IoError("save_metrics: write failed for '" + path.string() + "'");
}

}  // namespace uqc
