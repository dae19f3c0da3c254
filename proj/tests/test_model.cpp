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

#include <cmath>
#include <filesystem>
#include <numbers>

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"
#include "uqc/errors.hpp"
#include "uqc/model.hpp"

using namespace uqc;
using Catch::Matchers::WithinAbs;

namespace {

// Closed form of rz(v3) ry(v2) rz(v1), written out entry by entry so layer
// construction is checked against independent algebra.
Unitary2 layer_oracle(double v1, double v2, double v3) {
  const double ch = std::cos(v2 / 2.0);
  const double sh = std::sin(v2 / 2.0);
  const cplx i(0.0, 1.0);
  return {std::exp(-i * ((v3 + v1) / 2.0)) * ch, -std::exp(-i * ((v3 - v1) / 2.0)) * sh,
          std::exp(i * ((v3 - v1) / 2.0)) * sh, std::exp(i * ((v3 + v1) / 2.0)) * ch};
}

}  // namespace

TEST_CASE("zero-parameter layers are the identity", "[model]") {
  const LayerParams zero;
  CHECK(frobenius_distance(layer_unitary(zero, {0.3, -0.8}), identity()) < kAlgebraicTol);

  LayerParams flip;
  flip.omega[1] = std::numbers::pi;
  CHECK(frobenius_distance(layer_unitary(flip, {0.5, 0.5}), ry(std::numbers::pi)) <
        kAlgebraicTol);
}

TEST_CASE("layer unitary matches the closed-form oracle", "[model]") {
  CounterRng rng(21);
  for (int i = 0; i < 500; ++i) {
    LayerParams p;
    for (double& t : p.theta) t = std::numbers::pi * rng.next_symmetric();
    for (double& o : p.omega) o = std::numbers::pi * rng.next_symmetric();
    const Point2 x = test::random_point(rng);
    const double v1 = p.theta[0] * x.x1 + p.omega[0];
    const double v2 = p.theta[1] * x.x2 + p.omega[1];
    const double v3 = p.omega[2];
    CHECK(frobenius_distance(layer_unitary(p, x), layer_oracle(v1, v2, v3)) < kAlgebraicTol);
  }
}

TEST_CASE("model unitary condenses the layer sequence", "[model]") {
  CounterRng rng(22);

  UqcParams one = test::random_params(rng, 1, 2);
  const Point2 x0 = test::random_point(rng);
  CHECK(frobenius_distance(model_unitary(one, x0), layer_unitary(one.layers[0], x0)) <
        kAlgebraicTol);

  UqcParams zero;
  zero.layers.resize(4);
  CHECK(frobenius_distance(model_unitary(zero, x0), identity()) < kAlgebraicTol);

  for (int i = 0; i < 200; ++i) {
    const UqcParams p = test::random_params(rng, 6, 2);
    const Point2 x = test::random_point(rng);
    PureState sequential;
    for (const auto& layer : p.layers) sequential = apply(layer_unitary(layer, x), sequential);
    const PureState condensed = apply(model_unitary(p, x), PureState{});
    CHECK(std::abs(condensed.a0 - sequential.a0) < 1e-10);
    CHECK(std::abs(condensed.a1 - sequential.a1) < 1e-10);
  }
}

TEST_CASE("forward state basics", "[model]") {
  UqcParams zero;
  zero.layers.resize(3);
  const PureState s = forward_state(zero, {0.1, 0.2});
  CHECK_THAT(std::norm(s.a0), WithinAbs(1.0, kAlgebraicTol));

  UqcParams flip;
  flip.layers.resize(1);
  flip.layers[0].omega[1] = std::numbers::pi;
  CHECK_THAT(std::norm(forward_state(flip, {0.4, 0.0}).a1), WithinAbs(1.0, kAlgebraicTol));

  CounterRng rng(23);
  for (int i = 0; i < 200; ++i) {
    const UqcParams p = test::random_params(rng, 6, 2);
    CHECK_THAT(state_norm(forward_state(p, test::random_point(rng))),
               WithinAbs(1.0, kAlgebraicTol));
  }
}

TEST_CASE("binary label states are the poles", "[model]") {
  const auto states = label_states(2);
  REQUIRE(states.size() == 2);
  CHECK_THAT(fidelity(states[0], bloch_of(states[1])), WithinAbs(0.0, kAlgebraicTol));
  const auto blochs = label_blochs(2);
  CHECK_THAT(blochs[0].z, WithinAbs(1.0, kAlgebraicTol));
  CHECK_THAT(blochs[1].z, WithinAbs(-1.0, kAlgebraicTol));
  // Antipodal: inner product -1.
  CHECK_THAT(blochs[0].x * blochs[1].x + blochs[0].y * blochs[1].y + blochs[0].z * blochs[1].z,
             WithinAbs(-1.0, kAlgebraicTol));
}

TEST_CASE("trinary label states sit at 120 degrees in the x-z plane", "[model]") {
  const auto states = label_states(3);
  REQUIRE(states.size() == 3);
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      // (1 + cos 120deg)/2 = 1/4.
      CHECK_THAT(fidelity(states[a], bloch_of(states[b])), WithinAbs(0.25, kGeometricTol));
    }
  }
  const auto blochs = label_blochs(3);
  BlochVec sum{0, 0, 0};
  for (const auto& r : blochs) {
    sum.x += r.x;
    sum.y += r.y;
    sum.z += r.z;
    CHECK_THAT(r.y, WithinAbs(0.0, kAlgebraicTol));
  }
  CHECK_THAT(sum.x, WithinAbs(0.0, kAlgebraicTol));
  CHECK_THAT(sum.y, WithinAbs(0.0, kAlgebraicTol));
  CHECK_THAT(sum.z, WithinAbs(0.0, kAlgebraicTol));
  // First state is |0> so the polar angles are 0, 2pi/3, 4pi/3.
  CHECK_THAT(blochs[0].z, WithinAbs(1.0, kAlgebraicTol));
  CHECK_THAT(blochs[1].x, WithinAbs(std::sin(2.0 * std::numbers::pi / 3.0), kAlgebraicTol));
  CHECK_THAT(blochs[1].z, WithinAbs(std::cos(2.0 * std::numbers::pi / 3.0), kAlgebraicTol));
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      const double dot = blochs[a].x * blochs[b].x + blochs[a].y * blochs[b].y +
                         blochs[a].z * blochs[b].z;
      CHECK_THAT(dot, WithinAbs(-0.5, kAlgebraicTol));
    }
  }

  CHECK_THROWS_AS(label_states(4), ValidationError);
  CHECK_THROWS_AS(label_states(1), ValidationError);
}

TEST_CASE("exact classification agrees with brute-force fidelity", "[model]") {
  CounterRng rng(24);
  for (int c : {2, 3}) {
    const auto states = label_states(c);
    const auto blochs = label_blochs(c);
    for (int i = 0; i < 1000; ++i) {
      const UqcParams p = test::random_params(rng, 4, c);
      const Point2 x = test::random_point(rng);
      const int got = classify_exact(p, x, blochs);

      const PureState psi = forward_state(p, x);
      int best = 0;
      double best_f = -1.0;
      for (int k = 0; k < c; ++k) {
        const double f = std::norm(inner(states[k], psi));
        if (f > best_f) {
          best_f = f;
          best = k;
        }
      }
      CHECK(got == best);
    }
  }
}

TEST_CASE("classification ignores global phase", "[model]") {
  CounterRng rng(25);
  const auto blochs = label_blochs(3);
  for (int i = 0; i < 200; ++i) {
    const UqcParams p = test::random_params(rng, 4, 3);
    const Point2 x = test::random_point(rng);
    PureState psi = forward_state(p, x);
    const cplx ph = std::exp(cplx(0.0, 2.0 * std::numbers::pi * rng.next_unit()));
    const PureState phased{ph * psi.a0, ph * psi.a1};
    CHECK(argmax_fidelity(blochs, bloch_of(psi)) == argmax_fidelity(blochs, bloch_of(phased)));
  }
}

TEST_CASE("zero parameters classify to class 0", "[model]") {
  UqcParams zero;
  zero.layers.resize(6);
  zero.num_classes = 2;
  CHECK(classify_exact(zero, {0.7, -0.2}, label_blochs(2)) == 0);

  UqcParams flip;
  flip.layers.resize(1);
  flip.layers[0].omega[1] = std::numbers::pi;
  CHECK(classify_exact(flip, {0.7, -0.2}, label_blochs(2)) == 1);
}

TEST_CASE("flat parameter layout is theta1 theta2 omega1 omega2 omega3", "[model]") {
  const std::vector<double> flat{10, 11, 12, 13, 14, 20, 21, 22, 23, 24};
  const UqcParams p = unflatten(flat, 2);
  REQUIRE(p.layers.size() == 2);
  CHECK(p.layers[0].theta[0] == 10);
  CHECK(p.layers[0].theta[1] == 11);
  CHECK(p.layers[0].omega[0] == 12);
  CHECK(p.layers[0].omega[1] == 13);
  CHECK(p.layers[0].omega[2] == 14);
  CHECK(p.layers[1].theta[0] == 20);
  CHECK(flatten(p) == flat);

  CHECK_THROWS_AS(unflatten({1.0, 2.0, 3.0}, 2), ValidationError);
  CHECK_THROWS_AS(unflatten({}, 2), ValidationError);
}

TEST_CASE("model json round-trip is bit exact", "[model]") {
  CounterRng rng(26);
  UqcParams p = test::random_params(rng, 10, 3);
  ModelMeta meta{10, 3, "two-circles", 77};
  const auto path = std::filesystem::temp_directory_path() / "uqc_model.json";
  save_model(p, meta, path);
  const auto [loaded, lmeta] = load_model(path);
  CHECK(flatten(loaded) == flatten(p));
  CHECK(lmeta.num_layers == 10);
  CHECK(lmeta.num_classes == 3);
  CHECK(lmeta.problem_name == "two-circles");
  CHECK(lmeta.seed == 77);
  std::filesystem::remove(path);
}

TEST_CASE("model json schema violations name the field", "[model]") {
  CHECK_THROWS_AS(model_from_json(nlohmann::json::array()), SchemaError);
  CHECK_THROWS_AS(model_from_json({{"params", 3}, {"meta", nlohmann::json::object()}}),
                  SchemaError);

  try {
    model_from_json({{"params", {1.0, 2.0}}, {"meta", nlohmann::json::object()}});
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(e.field_path() == "meta");
  }

  // Parameter count inconsistent with num_layers.
  nlohmann::json j;
  j["params"] = {1.0, 2.0, 3.0, 4.0, 5.0};
  j["meta"] = {{"num_layers", 2}, {"num_classes", 2}, {"problem_name", "circle"}, {"seed", 0}};
  try {
    model_from_json(j);
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(e.field_path() == "params");
  }
}

TEST_CASE("initialization is uniform over [-pi, pi] and seeded", "[model]") {
  const UqcParams a = init_params(6, 2, 31);
  const UqcParams b = init_params(6, 2, 31);
  const UqcParams c = init_params(6, 2, 32);
  CHECK(flatten(a) == flatten(b));
  CHECK(flatten(a) != flatten(c));

  double lo = 1e9;
  double hi = -1e9;
  for (int seed = 0; seed < 40; ++seed) {
    for (double v : flatten(init_params(10, 3, seed))) {
      REQUIRE(v >= -std::numbers::pi);
      REQUIRE(v <= std::numbers::pi);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  // 2000 draws should reach well into both tails.
  CHECK(lo < -3.0);
  CHECK(hi > 3.0);

  CHECK_THROWS_AS(init_params(0, 2, 1), ValidationError);
}
