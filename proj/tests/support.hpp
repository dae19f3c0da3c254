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

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>

#include "uqc/model.hpp"
#include "uqc/qmath.hpp"
#include "uqc/rng.hpp"

// Shared oracles for the test suite. Everything here is deliberately
// independent of the library's own algebra where it matters: checks
// multiply matrices out directly instead of reusing the code under test.

namespace uqc::test {

inline double gaussian(CounterRng& rng) {
  // Box-Muller; next_unit is in [0,1), flip to (0,1] for the log.
  const double u = 1.0 - rng.next_unit();
  const double v = rng.next_unit();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

/// Haar-random SU(2) via a normalised Gaussian quaternion.
inline Unitary2 haar_su2(CounterRng& rng) {
  double q[4];
  for (double& x : q) x = gaussian(rng);
  const double n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
  for (double& x : q) x /= n;
  // (q0 + i q3, q2 + i q1; -q2 + i q1, q0 - i q3) is unitary with det 1.
  return {cplx(q[0], q[3]), cplx(q[2], q[1]), cplx(-q[2], q[1]), cplx(q[0], -q[3])};
}

/// Haar-random U(2): SU(2) times a uniform global phase.
inline Unitary2 haar_u2(CounterRng& rng) {
  Unitary2 u = haar_su2(rng);
  const cplx ph = std::exp(cplx(0.0, 2.0 * std::numbers::pi * rng.next_unit()));
  return {ph * u.u00, ph * u.u01, ph * u.u10, ph * u.u11};
}

/// min over phi of ||a - e^{i phi} b||_F.
inline double distance_up_to_phase(const Unitary2& a, const Unitary2& b) {
  const cplx overlap = std::conj(b.u00) * a.u00 + std::conj(b.u01) * a.u01 +
                       std::conj(b.u10) * a.u10 + std::conj(b.u11) * a.u11;
  const double na2 = std::norm(a.u00) + std::norm(a.u01) + std::norm(a.u10) + std::norm(a.u11);
  const double nb2 = std::norm(b.u00) + std::norm(b.u01) + std::norm(b.u10) + std::norm(b.u11);
  const double d2 = na2 + nb2 - 2.0 * std::abs(overlap);
  return std::sqrt(std::max(0.0, d2));
}

inline double distance_up_to_phase(const PureState& a, const PureState& b) {
  const cplx overlap = std::conj(b.a0) * a.a0 + std::conj(b.a1) * a.a1;
  const double d2 = std::norm(a.a0) + std::norm(a.a1) + std::norm(b.a0) + std::norm(b.a1) -
                    2.0 * std::abs(overlap);
  return std::sqrt(std::max(0.0, d2));
}

/// The SO(3) rotation a unitary induces on Bloch vectors, computed from the
/// Pauli transfer definition R_ij = Re(tr(sigma_i U sigma_j U^dag)) / 2.
inline std::array<std::array<double, 3>, 3> bloch_rotation(const Unitary2& u) {
  const cplx i(0.0, 1.0);
  const Unitary2 paulis[3] = {
      {0.0, 1.0, 1.0, 0.0},   // X
      {0.0, -i, i, 0.0},      // Y
      {1.0, 0.0, 0.0, -1.0},  // Z
  };
  std::array<std::array<double, 3>, 3> r{};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const Unitary2 m = paulis[a] * u * paulis[b] * dagger(u);
      r[a][b] = 0.5 * std::real(m.u00 + m.u11);
    }
  }
  return r;
}

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw IoError("read_file: cannot open '" + path.string() + "'");
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

/// Random parameter set with angles in [-pi, pi], independent of
/// init_params so initialization bugs cannot hide.
inline UqcParams random_params(CounterRng& rng, int num_layers, int num_classes) {
  UqcParams p;
  p.num_classes = num_classes;
  p.layers.resize(num_layers);
  for (auto& l : p.layers) {
    for (double& t : l.theta) t = std::numbers::pi * rng.next_symmetric();
    for (double& o : l.omega) o = std::numbers::pi * rng.next_symmetric();
  }
  return p;
}

inline Point2 random_point(CounterRng& rng) {
  return {rng.next_symmetric(), rng.next_symmetric()};
}

}  // namespace uqc::test
