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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "uqc/data.hpp"
#include "uqc/errors.hpp"
#include "uqc/qmath.hpp"
#include "uqc/rng.hpp"
#include "uqc/version.hpp"

// The single-qubit data re-uploading classifier. Each layer applies
// rz(v3) ry(v2) rz(v1) with v = (theta1*x1 + omega1, theta2*x2 + omega2,
// omega3), so the data point is fed back into the circuit once per layer.

namespace uqc {

/// One layer: two data-scaling weights and three bias angles.
struct LayerParams {
  double theta[2] = {0.0, 0.0};
  double omega[3] = {0.0, 0.0, 0.0};
};

/// Full parameter set. Layer 0 acts first on |0>.
struct UqcParams {
  std::vector<LayerParams> layers;
  int num_classes = 2;
};

inline constexpr int kParamsPerLayer = 5;

/// Flat layout, 5 reals per layer in the order theta1, theta2, omega1,
/// omega2, omega3.
inline std::vector<double> flatten(const UqcParams& p) {
  std::vector<double> flat;
  flat.reserve(p.layers.size() * kParamsPerLayer);
  for (const auto& l : p.layers) {
    flat.push_back(l.theta[0]);
    flat.push_back(l.theta[1]);
    flat.push_back(l.omega[0]);
    flat.push_back(l.omega[1]);
    flat.push_back(l.omega[2]);
  }
  return flat;
}

inline UqcParams unflatten(const std::vector<double>& flat, int num_classes) {
  if (flat.empty() || flat.size() % kParamsPerLayer != 0) {
    throw ValidationError("unflatten: parameter count " + std::to_string(flat.size()) +
                          " is not a positive multiple of 5");
  }
  UqcParams p;
  p.num_classes = num_classes;
  p.layers.resize(flat.size() / kParamsPerLayer);
  for (std::size_t l = 0; l < p.layers.size(); ++l) {
    const double* v = flat.data() + l * kParamsPerLayer;
    p.layers[l].theta[0] = v[0];
    p.layers[l].theta[1] = v[1];
    p.layers[l].omega[0] = v[2];
    p.layers[l].omega[1] = v[3];
    p.layers[l].omega[2] = v[4];
  }
  return p;
}

/// The three rotation angles a layer applies for data point x.
inline void layer_angles(const LayerParams& p, Point2 x, double v[3]) {
  v[0] = p.theta[0] * x.x1 + p.omega[0];
  v[1] = p.theta[1] * x.x2 + p.omega[1];
  v[2] = p.omega[2];
}

inline Unitary2 layer_unitary(const LayerParams& p, Point2 x) {
  double v[3];
  layer_angles(p, x, v);
  return rz(v[2]) * ry(v[1]) * rz(v[0]);
}

/// All layers condensed into one unitary, layer 0 innermost (it acts first).
inline Unitary2 model_unitary(const UqcParams& params, Point2 x) {
  Unitary2 u = identity();
  for (const auto& layer : params.layers) u = layer_unitary(layer, x) * u;
  return u;
}

inline PureState forward_state(const UqcParams& params, Point2 x) {
  return apply(model_unitary(params, x), PureState{});
}

/// Maximally separated label states. Two classes use the poles |0>, |1>.
/// Three classes use Bloch vectors in the X-Z plane at polar angles 0,
/// 2pi/3, 4pi/3, i.e. real-amplitude states (cos(phi/2), sin(phi/2)); the
/// first label state is |0> so one extra X-basis measurement fixes the
/// remaining ambiguity.
inline std::vector<PureState> label_states(int num_classes) {
  if (num_classes == 2) {
    return {PureState{1.0, 0.0}, PureState{0.0, 1.0}};
  }
  if (num_classes == 3) {
    std::vector<PureState> states;
    for (int c = 0; c < 3; ++c) {
      const double phi = 2.0 * std::numbers::pi * c / 3.0;
      states.push_back(PureState{std::cos(phi / 2.0), std::sin(phi / 2.0)});
    }
    return states;
  }
  throw ValidationError("label_states: unsupported class count " + std::to_string(num_classes));
}

inline std::vector<BlochVec> label_blochs(int num_classes) {
  const auto states = label_states(num_classes);
  std::vector<BlochVec> blochs;
  blochs.reserve(states.size());
  for (const auto& s : states) blochs.push_back(bloch_of(s));
  return blochs;
}

inline int argmax_fidelity(const std::vector<BlochVec>& labels, BlochVec r) {
  int best = 0;
  double best_f = fidelity(labels[0], r);
  for (std::size_t c = 1; c < labels.size(); ++c) {
    const double f = fidelity(labels[c], r);
    if (f > best_f) {
      best_f = f;
      best = static_cast<int>(c);
    }
  }
  return best;
}

/// Class whose label state has the highest fidelity with the forward state.
/// Ties break toward the lowest class index.
inline int classify_exact(const UqcParams& params, Point2 x, const std::vector<BlochVec>& labels) {
  return argmax_fidelity(labels, bloch_of(forward_state(params, x)));
}

inline int classify_exact(const UqcParams& params, Point2 x) {
  return classify_exact(params, x, label_blochs(params.num_classes));
}

/// i.i.d. uniform on [-pi, pi] from a dedicated seed.
inline UqcParams init_params(int num_layers, int num_classes, std::uint64_t init_seed) {
  if (num_layers < 1) throw ValidationError("init_params: layer count must be >= 1");
  CounterRng rng(init_seed);
  std::vector<double> flat(static_cast<std::size_t>(num_layers) * kParamsPerLayer);
  for (auto& v : flat) v = std::numbers::pi * rng.next_symmetric();
  return unflatten(flat, num_classes);
}

struct ModelMeta {
  int num_layers = 0;
  int num_classes = 2;
  std::string problem_name;
  std::uint64_t seed = 0;
};

/// {"params": [...5L reals...], "meta": {...}}. Doubles survive a
/// save/load round trip bit-exactly (shortest round-trip formatting).
inline nlohmann::json model_to_json(const UqcParams& params, const ModelMeta& meta,
                                    const std::map<std::string, std::string>& provenance = {}) {
  nlohmann::json j;
  j["params"] = flatten(params);
  j["meta"] = {
      {"num_layers", meta.num_layers},
      {"num_classes", meta.num_classes},
      {"problem_name", meta.problem_name},
      {"seed", meta.seed},
  };
  for (const auto& [k, v] : provenance) j["meta"][k] = v;
  return j;
}

inline void save_model(const UqcParams& params, const ModelMeta& meta,
                       const std::filesystem::path& path,
                       const std::map<std::string, std::string>& provenance = {}) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("save_model: cannot open '" + path.string() + "' for writing");
  out << model_to_json(params, meta, provenance).dump(2) << "\n";
  if (!out) throw IoError("save_model: write failed for '" + path.string() + "'");
}

inline std::pair<UqcParams, ModelMeta> model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("$", "model file must be a JSON object");
  if (!j.contains("params") || !j["params"].is_array()) {
    throw SchemaError("params", "missing or not an array");
  }
  if (!j.contains("meta") || !j["meta"].is_object()) {
    throw SchemaError("meta", "missing or not an object");
  }
  const auto& jm = j["meta"];
  ModelMeta meta;
  try {
    meta.num_layers = jm.at("num_layers").get<int>();
    meta.num_classes = jm.at("num_classes").get<int>();
    meta.problem_name = jm.at("problem_name").get<std::string>();
    meta.seed = jm.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("meta", e.what());
  }
  std::vector<double> flat;
  flat.reserve(j["params"].size());
  for (std::size_t i = 0; i < j["params"].size(); ++i) {
    const auto& v = j["params"][i];
    if (!v.is_number()) throw SchemaError("params[" + std::to_string(i) + "]", "not a number");
    flat.push_back(v.get<double>());
  }
  if (flat.size() != static_cast<std::size_t>(meta.num_layers) * kParamsPerLayer) {
    throw SchemaError("params", "expected " + std::to_string(meta.num_layers * kParamsPerLayer) +
                                    " values for num_layers=" + std::to_string(meta.num_layers) +
                                    ", got " + std::to_string(flat.size()));
  }
  return {unflatten(flat, meta.num_classes), meta};
}

inline std::pair<UqcParams, ModelMeta> load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("load_model: cannot open '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("load_model: '" + path.string() + "': " + e.what());
  }
  return model_from_json(j);
}

}  // namespace uqc
