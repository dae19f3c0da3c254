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

// End-to-end tour at toy scale: synthesize the circle problem, train a
// 6-layer classifier for a few epochs, condense one circuit to the native
// RX/RY/RX form, and compare exact with shot-sampled inference.

#include <cstdio>

#include "uqc/backend.hpp"
#include "uqc/data.hpp"
#include "uqc/model.hpp"
#include "uqc/trainer.hpp"
#include "uqc/transpiler.hpp"

int main() {
  using namespace uqc;

  const Dataset train_set = generate(Problem::kCircle, 500, 1);
  const Dataset test_set = generate(Problem::kCircle, 500, 2);

  AdamConfig adam;
  TrainConfig tcfg{8, 100, 3};
  auto [params, metrics] = train(train_set, test_set, 6, adam, tcfg, 4);
  for (std::size_t e = 0; e < metrics.test_accuracy.size(); ++e) {
    std::printf("epoch %2zu  cost %.4f  test accuracy %.3f\n", e + 1, metrics.mean_batch_cost(e),
                metrics.test_accuracy[e]);
  }

  const Point2 x{0.2, -0.4};
  const NativeProgram prog = compile_point(params, x, Basis::kZ);
  std::printf("\ncompiled point (%.1f, %.1f):\n%s\n", x.x1, x.x2, serialize(prog).c_str());

  const auto labels = label_blochs(2);
  const Counts exact = run_program(prog, exact_backend());
  const Counts sampled = run_program(prog, sampler_backend(7));
  std::printf("\nexact:   n0=%ld n1=%ld -> class %d\n", exact.n0, exact.n1,
              classify_from_counts(exact, {}, labels));
  std::printf("sampler: n0=%ld n1=%ld -> class %d\n", sampled.n0, sampled.n1,
              classify_from_counts(sampled, {}, labels));
  return 0;
}
