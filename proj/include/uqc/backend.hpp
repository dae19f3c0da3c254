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

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "uqc/errors.hpp"
#include "uqc/model.hpp"
#include "uqc/qmath.hpp"
#include "uqc/rng.hpp"
#include "uqc/transpiler.hpp"

// Executes native programs on one of two interchangeable backends: an exact
// statevector evaluator and a shot sampler with a configurable noise model
// (depolarizing channel on the final state plus asymmetric readout flips).

namespace uqc {

struct Counts {
  Basis basis = Basis::kZ;
  long n0 = 0;
  long n1 = 0;
  // The exact backend records the true outcome probability alongside its
  // rounded counts so downstream consumers can use full precision.
  std::optional<double> exact_p0;

  long total() const { return n0 + n1; }
};

struct NoiseModel {
  double depolarizing_p = 0.0;
  double readout_flip_0to1 = 0.0;
  double readout_flip_1to0 = 0.0;

  bool is_zero() const {
    return depolarizing_p == 0.0 && readout_flip_0to1 == 0.0 && readout_flip_1to0 == 0.0;
  }
};

inline void validate(const NoiseModel& n) {
  const auto in_range = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!in_range(n.depolarizing_p) || !in_range(n.readout_flip_0to1) ||
      !in_range(n.readout_flip_1to0)) {
    throw ValidationError("noise model: all probabilities must lie in [0, 1]");
  }
}

struct Backend {
  enum class Kind { kExact, kSampler };
  Kind kind = Kind::kExact;
  std::uint64_t seed = 0;
  NoiseModel noise;
};

inline Backend exact_backend() { return {}; }

inline Backend sampler_backend(std::uint64_t seed, NoiseModel noise = {}) {
  validate(noise);
  return {Backend::Kind::kSampler, seed, noise};
}

namespace detail {

inline PureState simulate_gates(const NativeProgram& prog) {
  PureState s;
  for (const auto& g : prog.gates) {
    switch (g.kind) {
      case NativeGate::Kind::kRx:
        s = apply(rx(g.theta), s);
        break;
      case NativeGate::Kind::kRy:
        s = apply(ry(g.theta), s);
        break;
      case NativeGate::Kind::kCz:
        throw ValidationError("run_program: CZ is not executable on the single-qubit backend");
    }
  }
  return s;
}

// Content hash used to pick the sampler substream when the caller does not
// supply one, so a given program always draws the same shots under one seed.
inline std::uint64_t program_hash(const NativeProgram& prog) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  const auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xff;
      h *= 0x100000001b3ull;
    }
  };
  const auto mix_double = [&](double d) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, sizeof(bits));
    mix(bits);
  };
  for (const auto& g : prog.gates) {
    mix(static_cast<std::uint64_t>(g.kind));
    mix_double(g.theta);
  }
  mix(prog.basis == Basis::kZ ? 0 : 1);
  mix(static_cast<std::uint64_t>(prog.shots));
  mix_double(prog.point.x1);
  mix_double(prog.point.x2);
  return h;
}

}  // namespace detail

/// Executes a program with an explicit sampler substream. The exact kind
/// rounds shots*p0; the sampler kind depolarizes the final Bloch vector
/// (r -> (1-p) r), applies readout flips to p0, and draws Bernoulli shots
/// from the stream derive_stream(backend seed, substream).
inline Counts run_program(const NativeProgram& prog, const Backend& b, std::uint64_t substream) {
  const PureState s = detail::simulate_gates(prog);
  Counts counts;
  counts.basis = prog.basis;

  if (b.kind == Backend::Kind::kExact) {
    const double p0 = std::norm(s.a0);
    counts.exact_p0 = p0;
    counts.n0 = std::lround(static_cast<double>(prog.shots) * p0);
    counts.n1 = prog.shots - counts.n0;
    return counts;
  }

  validate(b.noise);
  const BlochVec r = bloch_of(s);
  const double z = (1.0 - b.noise.depolarizing_p) * r.z;
  double p0 = (1.0 + z) / 2.0;
  p0 = p0 * (1.0 - b.noise.readout_flip_0to1) + (1.0 - p0) * b.noise.readout_flip_1to0;

  CounterRng rng(derive_stream(b.seed, substream));
  for (int i = 0; i < prog.shots; ++i) {
    if (rng.next_unit() < p0) {
      ++counts.n0;
    } else {
      ++counts.n1;
    }
  }
  return counts;
}

inline Counts run_program(const NativeProgram& prog, const Backend& b) {
  return run_program(prog, b, detail::program_hash(prog));
}

/// Bloch estimate from counts: z from the Z-basis slot, x from the X-basis
/// slot when present, y fixed to 0 (never measured by this pipeline). Exact
/// probabilities are used when the counts carry them.
inline BlochVec estimate_bloch(const Counts& z_counts, const std::optional<Counts>& x_counts) {
  if (z_counts.basis != Basis::kZ) {
    throw ValidationError("estimate_bloch: first counts are not Z-basis");
  }
  const auto component = [](const Counts& c) {
    if (c.exact_p0) return 2.0 * *c.exact_p0 - 1.0;
    if (c.total() <= 0) throw ValidationError("estimate_bloch: counts are empty");
    return static_cast<double>(c.n0 - c.n1) / static_cast<double>(c.total());
  };
  BlochVec r{0.0, 0.0, component(z_counts)};
  if (x_counts) {
    if (x_counts->basis != Basis::kX) {
      throw ValidationError("estimate_bloch: second counts are not X-basis");
    }
    r.x = component(*x_counts);
  }
  return r;
}

/// Argmax fidelity against the estimated Bloch vector; ties break toward
/// the lowest class index. Three classes require both measurement bases.
inline int classify_from_counts(const Counts& z_counts, const std::optional<Counts>& x_counts,
                                const std::vector<BlochVec>& labels) {
  if (labels.size() > 2 && !x_counts) {
    throw ValidationError("classify_from_counts: three classes need X-basis counts");
  }
  return argmax_fidelity(labels, estimate_bloch(z_counts, x_counts));
}

struct PointInference {
  Point2 point;
  Counts z_counts;
  std::optional<Counts> x_counts;
  BlochVec estimate;
  int predicted = 0;
};

struct InferenceReport {
  std::vector<PointInference> points;
  long long total_measurements = 0;
};

/// Compiles every point, runs the required bases (one for two classes, two
/// for three), and classifies from counts. Sampler substreams are derived
/// from the point index and basis slot, so results do not depend on
/// execution order. total_measurements = points x bases x shots.
inline InferenceReport infer_dataset(const UqcParams& params, const std::vector<Point2>& points,
                                     const std::vector<BlochVec>& labels, const Backend& b,
                                     int shots = kDefaultShots) {
  const bool need_x = labels.size() > 2;
  InferenceReport report;
  report.points.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    PointInference pi;
    pi.point = points[i];
    pi.z_counts = run_program(compile_point(params, points[i], Basis::kZ, shots), b, 2 * i);
    if (need_x) {
      pi.x_counts = run_program(compile_point(params, points[i], Basis::kX, shots), b, 2 * i + 1);
    }
    pi.estimate = estimate_bloch(pi.z_counts, pi.x_counts);
    pi.predicted = argmax_fidelity(labels, pi.estimate);
    report.total_measurements += static_cast<long long>(shots) * (need_x ? 2 : 1);
    report.points.push_back(std::move(pi));
  }
  return report;
}

namespace detail {

inline nlohmann::json counts_to_json(const Counts& c) {
  nlohmann::json j{{"n0", c.n0}, {"n1", c.n1}};
  if (c.exact_p0) j["exact_p0"] = *c.exact_p0;
  return j;
}

}  // namespace detail

/// JSON lines, one record per point, closed by one summary record. The
/// summary carries the accuracy when true labels are supplied.
inline void write_inference_report(const InferenceReport& report,
                                   const std::vector<int>* true_labels, const Backend& b,
                                   const std::filesystem::path& path,
                                   const std::map<std::string, std::string>& provenance = {}) {
  if (true_labels && true_labels->size() != report.points.size()) {
    throw ValidationError("write_inference_report: label count does not match point count");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("write_inference_report: cannot open '" + path.string() + "'");

  std::size_t correct = 0;
  for (std::size_t i = 0; i < report.points.size(); ++i) {
    const auto& pi = report.points[i];
    nlohmann::json j;
    j["point"] = {pi.point.x1, pi.point.x2};
    nlohmann::json bc;
    bc["Z"] = detail::counts_to_json(pi.z_counts);
    if (pi.x_counts) bc["X"] = detail::counts_to_json(*pi.x_counts);
    j["basis_counts"] = bc;
    j["bloch_estimate"] = {pi.estimate.x, pi.estimate.y, pi.estimate.z};
    j["predicted_label"] = pi.predicted;
    if (true_labels) {
      j["true_label"] = (*true_labels)[i];
      if ((*true_labels)[i] == pi.predicted) ++correct;
    }
    out << j.dump() << "\n";
  }

  nlohmann::json summary;
  summary["summary"] = true;
  if (true_labels && !report.points.empty()) {
    summary["accuracy"] = static_cast<double>(correct) / static_cast<double>(report.points.size());
  }
  summary["total_measurements"] = report.total_measurements;
  summary["backend"] = b.kind == Backend::Kind::kExact ? "exact" : "sampler";
  summary["noise"] = {{"depolarizing_p", b.noise.depolarizing_p},
                      {"readout_flip_0to1", b.noise.readout_flip_0to1},
                      {"readout_flip_1to0", b.noise.readout_flip_1to0}};
  summary["seed"] = b.seed;
  for (const auto& [k, v] : provenance) summary[k] = v;
  out << summary.dump() << "\n";
  if (!out) throw IoError("write_inference_report: write failed for '" + path.string() + "'");
}

}  // namespace uqc
