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
#include <complex>

// Exact single-qubit linear algebra: rotation gates, state evolution,
// Bloch-vector conversion, and fidelity. Everything here is a pure function
// over small value types and safe to call concurrently.
//
// Rotation convention: R_A(theta) = exp(-i * theta * A / 2) for A in
// {X, Y, Z} (half angle, right handed). Global phase is never normalised
// away; comparisons that are meant to ignore it say so explicitly.

namespace uqc {

using cplx = std::complex<double>;

// Library-wide tolerances. Algebraic identities between exactly constructed
// matrices hold to kAlgebraicTol; quantities that accumulate trigonometry or
// many products are held to kGeometricTol.
inline constexpr double kAlgebraicTol = 1e-12;
inline constexpr double kGeometricTol = 1e-9;

/// 2x2 complex matrix, row major. Gate constructors return unitaries;
/// arbitrary entries are representable for intermediate arithmetic.
struct Unitary2 {
  cplx u00{1.0}, u01{0.0}, u10{0.0}, u11{1.0};
};

/// Pure state |psi> = a0|0> + a1|1>, |a0|^2 + |a1|^2 = 1.
struct PureState {
  cplx a0{1.0}, a1{0.0};
};

/// Real Bloch vector. Pure states have |r| = 1; mixed states |r| < 1.
struct BlochVec {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline Unitary2 identity() { return {}; }

/// exp(-i theta X / 2)
inline Unitary2 rx(double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  return {cplx(c, 0.0), cplx(0.0, -s), cplx(0.0, -s), cplx(c, 0.0)};
}

/// exp(-i theta Y / 2); all entries real.
inline Unitary2 ry(double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  return {cplx(c, 0.0), cplx(-s, 0.0), cplx(s, 0.0), cplx(c, 0.0)};
}

/// exp(-i theta Z / 2) = diag(e^{-i theta/2}, e^{+i theta/2})
inline Unitary2 rz(double theta) {
  return {std::polar(1.0, -0.5 * theta), cplx(0.0, 0.0),
          cplx(0.0, 0.0), std::polar(1.0, 0.5 * theta)};
}

inline Unitary2 mul(const Unitary2& a, const Unitary2& b) {
  return {a.u00 * b.u00 + a.u01 * b.u10, a.u00 * b.u01 + a.u01 * b.u11,
          a.u10 * b.u00 + a.u11 * b.u10, a.u10 * b.u01 + a.u11 * b.u11};
}

inline Unitary2 operator*(const Unitary2& a, const Unitary2& b) { return mul(a, b); }

/// Conjugate transpose.
inline Unitary2 dagger(const Unitary2& u) {
  return {std::conj(u.u00), std::conj(u.u10), std::conj(u.u01), std::conj(u.u11)};
}

inline PureState apply(const Unitary2& u, const PureState& psi) {
  return {u.u00 * psi.a0 + u.u01 * psi.a1, u.u10 * psi.a0 + u.u11 * psi.a1};
}

/// <bra|ket>
inline cplx inner(const PureState& bra, const PureState& ket) {
  return std::conj(bra.a0) * ket.a0 + std::conj(bra.a1) * ket.a1;
}

inline double state_norm(const PureState& psi) {
  return std::sqrt(std::norm(psi.a0) + std::norm(psi.a1));
}

/// (x, y, z) = (2 Re(a0* a1), 2 Im(a0* a1), |a0|^2 - |a1|^2). For a
/// normalised state the result has unit length; global phase drops out.
inline BlochVec bloch_of(const PureState& psi) {
  const cplx cross = std::conj(psi.a0) * psi.a1;
  return {2.0 * cross.real(), 2.0 * cross.imag(), std::norm(psi.a0) - std::norm(psi.a1)};
}

/// Fidelity between a pure label state and a (possibly mixed) state given by
/// its Bloch vector r: (1 + s.r)/2 with s the label's Bloch vector. Equals
/// |<label|psi>|^2 when r comes from a pure |psi>.
inline double fidelity(const BlochVec& s, const BlochVec& r) {
  return 0.5 * (1.0 + s.x * r.x + s.y * r.y + s.z * r.z);
}

inline double fidelity(const PureState& label, const BlochVec& r) {
  return fidelity(bloch_of(label), r);
}

inline double fidelity(const PureState& a, const PureState& b) {
  return std::norm(std::conj(a.a0) * b.a0 + std::conj(a.a1) * b.a1);
}

inline double frobenius_norm(const Unitary2& u) {
  return std::sqrt(std::norm(u.u00) + std::norm(u.u01) + std::norm(u.u10) + std::norm(u.u11));
}

inline double frobenius_distance(const Unitary2& a, const Unitary2& b) {
  return frobenius_norm({a.u00 - b.u00, a.u01 - b.u01, a.u10 - b.u10, a.u11 - b.u11});
}

/// ||U'U - I||_F; zero for exact unitaries.
inline double unitarity_error(const Unitary2& u) {
  return frobenius_distance(mul(dagger(u), u), identity());
}

}  // namespace uqc
