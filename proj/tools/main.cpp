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

#include <iostream>
#include <string>
#include <string_view>

#include <CLI11.hpp>

#include "uqc/cli.hpp"
#include "uqc/errors.hpp"
#include "uqc/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

void add_common_options(CLI::App& sub, uqc::cli::RunConfig& cfg, std::string& config_path) {
  sub.add_option("--config", config_path, "JSON config file; flags given here override it");
  sub.add_option("--problem", cfg.problem, "circle, sine, or two-circles")
      ->capture_default_str();
  sub.add_option("--layers", cfg.num_layers, "re-uploading layers (0 = problem default)")
      ->capture_default_str();
  sub.add_option("--train-n", cfg.train_n, "training set size")->capture_default_str();
  sub.add_option("--test-n", cfg.test_n, "test set size")->capture_default_str();
  sub.add_option("--infer-n", cfg.infer_n, "inference set size (0 = problem default)")
      ->capture_default_str();
  sub.add_option("--lr", cfg.adam.learning_rate, "Adam learning rate")->capture_default_str();
  sub.add_option("--beta1", cfg.adam.beta1, "Adam beta1")->capture_default_str();
  sub.add_option("--beta2", cfg.adam.beta2, "Adam beta2")->capture_default_str();
  sub.add_option("--epsilon", cfg.adam.epsilon, "Adam epsilon")->capture_default_str();
  sub.add_option("--epochs", cfg.epochs, "training epochs")->capture_default_str();
  sub.add_option("--batch-size", cfg.batch_size, "points per batch")->capture_default_str();
  sub.add_option("--backend", cfg.backend, "exact or sampler")->capture_default_str();
  sub.add_option("--shots", cfg.shots, "shots per point per basis")->capture_default_str();
  sub.add_option("--depolarizing-p", cfg.noise.depolarizing_p, "sampler depolarizing strength")
      ->capture_default_str();
  sub.add_option("--readout-flip-0to1", cfg.noise.readout_flip_0to1,
                 "sampler probability of reading 0 as 1")
      ->capture_default_str();
  sub.add_option("--readout-flip-1to0", cfg.noise.readout_flip_1to0,
                 "sampler probability of reading 1 as 0")
      ->capture_default_str();
  sub.add_option("--data-seed,--seed", cfg.data_seed, "dataset generation seed")
      ->capture_default_str();
  sub.add_option("--init-seed", cfg.init_seed, "parameter initialization seed")
      ->capture_default_str();
  sub.add_option("--shuffle-seed", cfg.shuffle_seed, "epoch shuffling seed")
      ->capture_default_str();
  sub.add_option("--sampler-seed", cfg.sampler_seed, "shot sampling seed")
      ->capture_default_str();
  sub.add_option("--out-dir", cfg.out_dir, "output directory")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-qubit data re-uploading classifier pipeline"};
  app.set_version_flag("--version", UQC_VERSION);
  app.require_subcommand(1);

  uqc::cli::RunConfig cfg;
  std::string config_path;

  // The config file must be applied before CLI11 writes flag values, so
  // that explicit flags win over the file; find it with a pre-scan.
  for (int i = 1; i < argc; ++i) {
    const std::string_view arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      config_path = argv[i + 1];
    } else if (arg.rfind("--config=", 0) == 0) {
      config_path = arg.substr(9);
    }
  }

  auto* gen_data = app.add_subcommand("gen-data", "generate train/test/inference CSVs");
  add_common_options(*gen_data, cfg, config_path);

  auto* train = app.add_subcommand("train", "train a model on generated CSVs");
  add_common_options(*train, cfg, config_path);

  auto* infer = app.add_subcommand("infer", "run a trained model over the inference CSV");
  add_common_options(*infer, cfg, config_path);

  auto* transpile = app.add_subcommand("transpile", "compile one point to a native program");
  add_common_options(*transpile, cfg, config_path);
  double x1 = 0.0;
  double x2 = 0.0;
  std::string basis = "Z";
  std::string output;
  transpile->add_option("--x1", x1, "first coordinate")->required();
  transpile->add_option("--x2", x2, "second coordinate")->required();
  transpile->add_option("--basis", basis, "measurement basis, Z or X")->capture_default_str();
  transpile->add_option("--output", output, "output file (default: stdout)");

  auto* reproduce = app.add_subcommand("reproduce", "full pipeline over all three problems");
  add_common_options(*reproduce, cfg, config_path);

  try {
    if (!config_path.empty()) uqc::cli::load_config_file(config_path, cfg);
    app.parse(argc, argv);

    if (gen_data->parsed()) {
      uqc::cli::cmd_gen_data(cfg);
    } else if (train->parsed()) {
      uqc::cli::cmd_train(cfg);
    } else if (infer->parsed()) {
      uqc::cli::cmd_infer(cfg);
    } else if (transpile->parsed()) {
      uqc::cli::cmd_transpile(cfg, x1, x2, basis, output);
    } else if (reproduce->parsed()) {
      uqc::cli::cmd_reproduce(cfg);
    }
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  } catch (const uqc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
