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
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "uqc/errors.hpp"
#include "uqc/model.hpp"
#include "uqc/qmath.hpp"

// Condenses the layered circuit into one 2x2 unitary and rewrites it in the
// device-native basis as rx(a) ry(b) rx(c), global phase tracked separately.

namespace uqc {

/// rx(a) ry(b) rx(c) = exp(i*global_phase) * U, with b in [0, pi] and
/// a, c in (-pi, pi].
struct XyxAngles {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double global_phase = 0.0;
};

inline Unitary2 hadamard() {
  const double s = 1.0 / std::numbers::sqrt2;
  return {s, s, s, -s};
}

namespace detail {

// Wraps t into (-pi, pi] and reports the number of 2*pi turns removed.
// Each removed turn flips the sign of rx(t), i.e. adds pi to the phase.
inline double wrap_angle(double t, long& turns) {
  const double two_pi = 2.0 * std::numbers::pi;
  long k = static_cast<long>(std::ceil((t - std::numbers::pi) / two_pi));
  double w = t - two_pi * static_cast<double>(k);
  if (w <= -std::numbers::pi) {
    w += two_pi;
    k -= 1;
  } else if (w > std::numbers::pi) {
    w -= two_pi;
    k += 1;
  }
  turns += k;
  return w;
}

}  // namespace detail

/// XYX Euler decomposition. Conjugating by H turns the problem into a ZYZ
/// decomposition (H rz(t) H = rx(t), H ry(t) H = ry(-t)), which is solved in
/// closed form on the SU(2) part; the determinant phase and any angle wraps
/// are folded into global_phase. When b is at a pole (|sin b| < 1e-9) the
/// pair (a, c) is degenerate and the whole rotation is folded into a.
inline XyxAngles decompose_xyx(const Unitary2& u) {
  if (unitarity_error(u) > kGeometricTol) {
    throw ValidationError("decompose_xyx: input is not unitary (deviation " +
                          std::to_string(unitarity_error(u)) + ")");
  }
  const Unitary2 h = hadamard();
  const Unitary2 w = h * u * h;

  const cplx det = w.u00 * w.u11 - w.u01 * w.u10;
  const double delta0 = std::arg(det) / 2.0;
  const cplx unphase = std::exp(cplx(0.0, -delta0));
  const cplx v00 = unphase * w.u00;
  const cplx v10 = unphase * w.u10;

  // W = e^{i delta0} rz(phi1) ry(beta) rz(phi3) with beta in [0, pi], so
  // U = e^{i delta0} rx(phi1) ry(-beta) rx(phi3).
  const double beta = 2.0 * std::atan2(std::abs(v10), std::abs(v00));
  const double p = std::arg(v00);
  const double q = std::arg(v10);

  XyxAngles ang;
  ang.a = q - p;
  ang.b = -beta;
  ang.c = -q - p;
  double phase = -delta0;

  // rx(a+pi) ry(-b) rx(c-pi) = rx(a) ry(b) rx(c) exactly, no phase change.
  if (ang.b < 0.0) {
    ang.a += std::numbers::pi;
    ang.b = -ang.b;
    ang.c -= std::numbers::pi;
  }
  ang.b += 0.0;  // normalize -0.0

  if (std::abs(std::sin(ang.b)) < kGeometricTol) {
    // ry(0) commutes rx freely; ry(pi) conjugates rx(c) to rx(-c).
    if (ang.b < std::numbers::pi / 2.0) {
      ang.a += ang.c;
    } else {
      ang.a -= ang.c;
    }
    ang.c = 0.0;
  }

  long turns = 0;
  ang.a = detail::wrap_angle(ang.a, turns);
  ang.c = detail::wrap_angle(ang.c, turns);
  if (turns % 2 != 0) phase += std::numbers::pi;
  long phase_turns = 0;
  ang.global_phase = detail::wrap_angle(phase, phase_turns);
  return ang;
}

inline Unitary2 reconstruct_xyx(const XyxAngles& ang) {
  Unitary2 u = rx(ang.a) * ry(ang.b) * rx(ang.c);
  const cplx ph = std::exp(cplx(0.0, -ang.global_phase));
  return {ph * u.u00, ph * u.u01, ph * u.u10, ph * u.u11};
}

struct NativeGate {
  enum class Kind { kRx, kRy, kCz };
  Kind kind = Kind::kRx;
  double theta = 0.0;
  int control = 0;
  int target = 0;
};

inline NativeGate make_rx(double theta) { return {NativeGate::Kind::kRx, theta, 0, 0}; }
inline NativeGate make_ry(double theta) { return {NativeGate::Kind::kRy, theta, 0, 0}; }
inline NativeGate make_cz(int control, int target) {
  return {NativeGate::Kind::kCz, 0.0, control, target};
}

enum class Basis { kZ, kX };

inline const char* basis_name(Basis b) { return b == Basis::kZ ? "Z" : "X"; }

/// A compiled circuit ready for a shot-based device: gates in application
/// order, measurement basis, shot budget, and the data point it encodes.
struct NativeProgram {
  std::vector<NativeGate> gates;
  Basis basis = Basis::kZ;
  int shots = 100;
  Point2 point;
  std::string model_id;
};

inline constexpr int kDefaultShots = 100;
inline constexpr double kXBasisRotation = -std::numbers::pi / 2.0;

/// Compiles the condensed model unitary for one data point into the native
/// three-rotation sequence. Gates are listed in application order, so the
/// rightmost factor rx(c) comes first. An X-basis measurement appends
/// RY(-pi/2), which maps the Bloch X axis onto Z.
inline NativeProgram compile_point(const UqcParams& params, Point2 x, Basis basis,
                                   int shots = kDefaultShots) {
  if (shots < 1) throw ValidationError("compile_point: shots must be >= 1");
  const XyxAngles ang = decompose_xyx(model_unitary(params, x));
  NativeProgram prog;
  prog.gates = {make_rx(ang.c), make_ry(ang.b), make_rx(ang.a)};
  if (basis == Basis::kX) prog.gates.push_back(make_ry(kXBasisRotation));
  prog.basis = basis;
  prog.shots = shots;
  prog.point = x;
  return prog;
}

inline nlohmann::json program_to_json(const NativeProgram& prog) {
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : prog.gates) {
    switch (g.kind) {
      case NativeGate::Kind::kRx:
        gates.push_back({{"g", "RX"}, {"theta", g.theta}});
        break;
      case NativeGate::Kind::kRy:
        gates.push_back({{"g", "RY"}, {"theta", g.theta}});
        break;
      case NativeGate::Kind::kCz:
        gates.push_back({{"g", "CZ"}, {"control", g.control}, {"target", g.target}});
        break;
    }
  }
  return {
      {"gates", gates},
      {"basis", basis_name(prog.basis)},
      {"shots", prog.shots},
      {"meta", {{"point", {prog.point.x1, prog.point.x2}}, {"model_id", prog.model_id}}},
  };
}

inline std::string serialize(const NativeProgram& prog) { return program_to_json(prog).dump(2); }

inline NativeProgram program_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("$", "program must be a JSON object");
  NativeProgram prog;

  if (!j.contains("gates") || !j["gates"].is_array()) {
    throw SchemaError("gates", "missing or not an array");
  }
  for (std::size_t i = 0; i < j["gates"].size(); ++i) {
    const auto& jg = j["gates"][i];
    const std::string path = "gates[" + std::to_string(i) + "]";
    if (!jg.is_object() || !jg.contains("g") || !jg["g"].is_string()) {
      throw SchemaError(path + ".g", "missing or not a string");
    }
    const std::string kind = jg["g"].get<std::string>();
    if (kind == "RX" || kind == "RY") {
      if (!jg.contains("theta") || !jg["theta"].is_number()) {
        throw SchemaError(path + ".theta", "missing or not a number");
      }
      const double theta = jg["theta"].get<double>();
      if (!std::isfinite(theta)) throw SchemaError(path + ".theta", "not finite");
      prog.gates.push_back(kind == "RX" ? make_rx(theta) : make_ry(theta));
    } else if (kind == "CZ") {
      if (!jg.contains("control") || !jg["control"].is_number_integer()) {
        throw SchemaError(path + ".control", "missing or not an integer");
      }
      if (!jg.contains("target") || !jg["target"].is_number_integer()) {
        throw SchemaError(path + ".target", "missing or not an integer");
      }
      prog.gates.push_back(make_cz(jg["control"].get<int>(), jg["target"].get<int>()));
    } else {
      throw SchemaError(path + ".g", "unknown gate '" + kind + "'");
    }
  }

  if (!j.contains("basis") || !j["basis"].is_string()) {
    throw SchemaError("basis", "missing or not a string");
  }
  const std::string basis = j["basis"].get<std::string>();
  if (basis == "Z") {
    prog.basis = Basis::kZ;
  } else if (basis == "X") {
    prog.basis = Basis::kX;
  } else {
    throw SchemaError("basis", "must be \"Z\" or \"X\", got \"" + basis + "\"");
  }

  if (!j.contains("shots") || !j["shots"].is_number_integer()) {
    throw SchemaError("shots", "missing or not an integer");
  }
  prog.shots = j["shots"].get<int>();
  if (prog.shots < 1) throw SchemaError("shots", "must be >= 1");

  if (j.contains("meta")) {
    const auto& jm = j["meta"];
    if (!jm.is_object()) throw SchemaError("meta", "not an object");
    if (jm.contains("point")) {
      if (!jm["point"].is_array() || jm["point"].size() != 2 || !jm["point"][0].is_number() ||
          !jm["point"][1].is_number()) {
        throw SchemaError("meta.point", "must be an array of 2 numbers");
      }
      prog.point.x1 = jm["point"][0].get<double>();
      prog.point.x2 = jm["point"][1].get<double>();
    }
    if (jm.contains("model_id")) {
      if (!jm["model_id"].is_string()) throw SchemaError("meta.model_id", "not a string");
      prog.model_id = jm["model_id"].get<std::string>();
    }
  }
  return prog;
}

inline NativeProgram deserialize(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("deserialize: ") + e.what());
  }
  return program_from_json(j);
}

inline void save_program(const NativeProgram& prog, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("save_program: cannot open '" + path.string() + "' for writing");
  out << serialize(prog) << "\n";
  if (!out) throw IoError("save_program: write failed for '" + path.string() + "'");
}

inline NativeProgram load_program(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("load_program: cannot open '" + path.string() + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(text);
}

}  // namespace uqc
