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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "uqc/backend.hpp"
#include "uqc/data.hpp"
#include "uqc/errors.hpp"
#include "uqc/model.hpp"
#include "uqc/trainer.hpp"
#include "uqc/transpiler.hpp"
#include "uqc/version.hpp"

// Command implementations behind the uqc binary. Every command is a pure
// function of its RunConfig: all randomness flows from the four seeds, and
// every output file records the resolved config hash.

namespace uqc::cli {

/// Everything a run needs. Zero values for num_layers / infer_n mean "use
/// the problem's default from kProblemDefaults".
struct RunConfig {
  std::string problem = "circle";
  int num_layers = 0;
  int train_n = 1000;
  int test_n = 2000;
  int infer_n = 0;

  AdamConfig adam;
  int epochs = 20;
  int batch_size = 100;

  std::string backend = "exact";
  // Calibrated so that 100-shot sampler accuracy on the binary problems runs
  // 1.5-2% below the exact backend, the gap a small device shows in practice.
  NoiseModel noise{0.10, 0.02, 0.12};
  int shots = kDefaultShots;

  std::uint64_t data_seed = 7;
  std::uint64_t init_seed = 2030;
  std::uint64_t shuffle_seed = 77;
  std::uint64_t sampler_seed = 9001;

  std::string out_dir = "out";
};

/// Experiment defaults per problem: layer count and inference-set size.
struct ProblemDefaults {
  const char* name;
  int layers;
  int infer_n;
};

inline constexpr ProblemDefaults kProblemDefaults[] = {
    {"circle", 6, 200},
    {"sine", 6, 200},
    {"two-circles", 10, 150},
};

struct ResolvedRun {
  Problem problem;
  int num_layers;
  int infer_n;
};

inline ResolvedRun resolve(const RunConfig& cfg) {
  const auto problem = problem_from_name(cfg.problem);
  if (!problem) throw ConfigError("unknown problem '" + cfg.problem + "'");
  ResolvedRun r{*problem, cfg.num_layers, cfg.infer_n};
  for (const auto& d : kProblemDefaults) {
    if (cfg.problem == d.name) {
      if (r.num_layers == 0) r.num_layers = d.layers;
      if (r.infer_n == 0) r.infer_n = d.infer_n;
    }
  }
  if (r.num_layers < 1) throw ConfigError("num_layers must be >= 1");
  if (r.infer_n < 1) throw ConfigError("infer_n must be >= 1");
  if (cfg.train_n < 1 || cfg.test_n < 1) throw ConfigError("train_n and test_n must be >= 1");
  if (cfg.epochs < 1) throw ConfigError("epochs must be >= 1");
  if (cfg.batch_size < 1 || cfg.batch_size > cfg.train_n) {
    throw ConfigError("batch_size must be in [1, train_n]");
  }
  if (cfg.shots < 1) throw ConfigError("shots must be >= 1");
  if (cfg.backend != "exact" && cfg.backend != "sampler") {
    throw ConfigError("backend must be 'exact' or 'sampler', got '" + cfg.backend + "'");
  }
  try {
    validate(cfg.adam);
    validate(cfg.noise);
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
  return r;
}

inline nlohmann::json config_to_json(const RunConfig& cfg) {
  return {
      {"problem", cfg.problem},
      {"num_layers", cfg.num_layers},
      {"train_n", cfg.train_n},
      {"test_n", cfg.test_n},
      {"infer_n", cfg.infer_n},
      {"learning_rate", cfg.adam.learning_rate},
      {"beta1", cfg.adam.beta1},
      {"beta2", cfg.adam.beta2},
      {"epsilon", cfg.adam.epsilon},
      {"epochs", cfg.epochs},
      {"batch_size", cfg.batch_size},
      {"backend", cfg.backend},
      {"depolarizing_p", cfg.noise.depolarizing_p},
      {"readout_flip_0to1", cfg.noise.readout_flip_0to1},
      {"readout_flip_1to0", cfg.noise.readout_flip_1to0},
      {"shots", cfg.shots},
      {"data_seed", cfg.data_seed},
      {"init_seed", cfg.init_seed},
      {"shuffle_seed", cfg.shuffle_seed},
      {"sampler_seed", cfg.sampler_seed},
      {"out_dir", cfg.out_dir},
  };
}

/// Overlays onto cfg every key present in the JSON object; absent keys keep
/// their current values (so flags parsed afterwards still take precedence).
inline void config_from_json(const nlohmann::json& j, RunConfig& cfg) {
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  const auto get = [&](const char* key, auto& field) {
    if (!j.contains(key)) return;
    try {
      field = j.at(key).get<std::remove_reference_t<decltype(field)>>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
  };
  get("problem", cfg.problem);
  get("num_layers", cfg.num_layers);
  get("train_n", cfg.train_n);
  get("test_n", cfg.test_n);
  get("infer_n", cfg.infer_n);
  get("learning_rate", cfg.adam.learning_rate);
  get("beta1", cfg.adam.beta1);
  get("beta2", cfg.adam.beta2);
  get("epsilon", cfg.adam.epsilon);
  get("epochs", cfg.epochs);
  get("batch_size", cfg.batch_size);
  get("backend", cfg.backend);
  get("depolarizing_p", cfg.noise.depolarizing_p);
  get("readout_flip_0to1", cfg.noise.readout_flip_0to1);
  get("readout_flip_1to0", cfg.noise.readout_flip_1to0);
  get("shots", cfg.shots);
  get("data_seed", cfg.data_seed);
  get("init_seed", cfg.init_seed);
  get("shuffle_seed", cfg.shuffle_seed);
  get("sampler_seed", cfg.sampler_seed);
  get("out_dir", cfg.out_dir);
  const nlohmann::json known = config_to_json(RunConfig{});
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  }
}

inline void load_config_file(const std::filesystem::path& path, RunConfig& cfg) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path.string() + "': " + e.what());
  }
  config_from_json(j, cfg);
}

/// FNV-1a over the canonical (key-sorted) resolved config dump.
inline std::string config_hash_hex(const RunConfig& cfg) {
  const std::string dump = config_to_json(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : dump) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::map<std::string, std::string> provenance(const RunConfig& cfg) {
  return {
      {"version", UQC_VERSION},
      {"config_hash", config_hash_hex(cfg)},
      {"data_seed", std::to_string(cfg.data_seed)},
      {"init_seed", std::to_string(cfg.init_seed)},
      {"shuffle_seed", std::to_string(cfg.shuffle_seed)},
      {"sampler_seed", std::to_string(cfg.sampler_seed)},
  };
}

inline std::vector<std::string> provenance_lines(const RunConfig& cfg) {
  std::vector<std::string> lines;
  for (const auto& [k, v] : provenance(cfg)) lines.push_back(k + "=" + v);
  return lines;
}

// Output locations, all under cfg.out_dir.
inline std::filesystem::path out_path(const RunConfig& cfg, const std::string& file) {
  return std::filesystem::path(cfg.out_dir) / file;
}
inline std::filesystem::path train_csv_path(const RunConfig& cfg) {
  return out_path(cfg, cfg.problem + "_train.csv");
}
inline std::filesystem::path test_csv_path(const RunConfig& cfg) {
  return out_path(cfg, cfg.problem + "_test.csv");
}
inline std::filesystem::path infer_csv_path(const RunConfig& cfg) {
  return out_path(cfg, cfg.problem + "_infer.csv");
}
inline std::filesystem::path model_path(const RunConfig& cfg) {
  return out_path(cfg, cfg.problem + "_model.json");
}
inline std::filesystem::path metrics_path(const RunConfig& cfg) {
  return out_path(cfg, cfg.problem + "_metrics.jsonl");
}
inline std::filesystem::path report_path(const RunConfig& cfg, const std::string& backend) {
  return out_path(cfg, cfg.problem + "_infer_" + backend + ".jsonl");
}
inline std::filesystem::path scatter_path(const RunConfig& cfg, const std::string& backend) {
  return out_path(cfg, cfg.problem + "_scatter_" + backend + ".csv");
}

inline void ensure_out_dir(const RunConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + cfg.out_dir + "': " + ec.message());
}

/// gen-data: train/test/inference CSVs from three derived streams of
/// data_seed, so set sizes can change independently without reshuffling
/// the others.
inline void cmd_gen_data(const RunConfig& cfg, std::ostream& log = std::cout) {
  const ResolvedRun run = resolve(cfg);
  ensure_out_dir(cfg);
  const auto lines = provenance_lines(cfg);

  const struct {
    std::filesystem::path path;
    std::size_t n;
    std::uint64_t stream;
  } sets[] = {
      {train_csv_path(cfg), static_cast<std::size_t>(cfg.train_n), 0},
      {test_csv_path(cfg), static_cast<std::size_t>(cfg.test_n), 1},
      {infer_csv_path(cfg), static_cast<std::size_t>(run.infer_n), 2},
  };
  for (const auto& s : sets) {
    const Dataset d = generate(run.problem, s.n, derive_stream(cfg.data_seed, s.stream));
    save_csv(d, s.path, lines);
    log << "wrote " << s.path.string() << " (" << d.points.size() << " points)\n";
  }
}

struct TrainOutcome {
  UqcParams params;
  TrainMetrics metrics;
};

/// train: reads the train/test CSVs, runs the full loop, writes the model
/// JSON and per-epoch metrics. `include_seconds=false` keeps the metrics
/// file byte-stable across runs.
inline TrainOutcome cmd_train(const RunConfig& cfg, bool include_seconds = true,
                              std::ostream& log = std::cout) {
  const ResolvedRun run = resolve(cfg);
  ensure_out_dir(cfg);
  const Dataset train_set = load_csv(train_csv_path(cfg), run.problem);
  const Dataset test_set = load_csv(test_csv_path(cfg), run.problem);

  TrainConfig tcfg{cfg.epochs, cfg.batch_size, cfg.shuffle_seed};
  auto [params, metrics] = train(train_set, test_set, run.num_layers, cfg.adam, tcfg, cfg.init_seed);

  ModelMeta meta;
  meta.num_layers = run.num_layers;
  meta.num_classes = num_classes(run.problem);
  meta.problem_name = cfg.problem;
  meta.seed = cfg.init_seed;
  save_model(params, meta, model_path(cfg), provenance(cfg));
  save_metrics(metrics, metrics_path(cfg), include_seconds);

  log << "wrote " << model_path(cfg).string() << "\n";
  log << "wrote " << metrics_path(cfg).string() << "\n";
  log << "final test accuracy " << metrics.test_accuracy.back() << "\n";
  return {std::move(params), std::move(metrics)};
}

inline Backend backend_from_config(const RunConfig& cfg) {
  if (cfg.backend == "exact") return exact_backend();
  return sampler_backend(cfg.sampler_seed, cfg.noise);
}

inline void write_scatter_csv(const InferenceReport& report, const std::filesystem::path& path,
                              std::span<const std::string> comments) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("write_scatter_csv: cannot open '" + path.string() + "'");
  for (const auto& line : comments) out << "# " << line << "\n";
  out << "x1,x2,predicted_label\n";
  for (const auto& pi : report.points) {
    out << format_double(pi.point.x1) << ',' << format_double(pi.point.x2) << ','
        << pi.predicted << "\n";
  }
  if (!out) throw IoError("write_scatter_csv: write failed for '" + path.string() + "'");
}

/// infer: runs the saved model over the inference CSV on the configured
/// backend, writes the per-point report plus a scatter CSV, and returns the
/// accuracy.
inline double cmd_infer(const RunConfig& cfg, std::ostream& log = std::cout) {
  const ResolvedRun run = resolve(cfg);
  ensure_out_dir(cfg);
  const auto [params, meta] = load_model(model_path(cfg));
  if (meta.num_classes != num_classes(run.problem)) {
    throw ValidationError("model '" + model_path(cfg).string() + "' has " +
                          std::to_string(meta.num_classes) + " classes, problem '" + cfg.problem +
                          "' needs " + std::to_string(num_classes(run.problem)));
  }
  const Dataset infer_set = load_csv(infer_csv_path(cfg), run.problem);

  std::vector<Point2> points;
  std::vector<int> truth;
  points.reserve(infer_set.points.size());
  for (const auto& lp : infer_set.points) {
    points.push_back(lp.point);
    truth.push_back(lp.label);
  }

  const Backend b = backend_from_config(cfg);
  const auto labels = label_blochs(meta.num_classes);
  const InferenceReport report = infer_dataset(params, points, labels, b, cfg.shots);

  write_inference_report(report, &truth, b, report_path(cfg, cfg.backend), provenance(cfg));
  const auto lines = provenance_lines(cfg);
  write_scatter_csv(report, scatter_path(cfg, cfg.backend), lines);

  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (report.points[i].predicted == truth[i]) ++correct;
  }
  const double accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
  log << "wrote " << report_path(cfg, cfg.backend).string() << "\n";
  log << "wrote " << scatter_path(cfg, cfg.backend).string() << "\n";
  log << cfg.backend << " accuracy " << accuracy << " (" << report.total_measurements
      << " measurements)\n";
  return accuracy;
}

/// transpile: compiles one data point against the saved model and writes
/// the native-program JSON (to stdout when no output path is given).
inline void cmd_transpile(const RunConfig& cfg, double x1, double x2, const std::string& basis,
                          const std::string& output, std::ostream& log = std::cout) {
  resolve(cfg);
  const auto [params, meta] = load_model(model_path(cfg));
  Basis b;
  if (basis == "Z") {
    b = Basis::kZ;
  } else if (basis == "X") {
    b = Basis::kX;
  } else {
    throw ConfigError("basis must be 'Z' or 'X', got '" + basis + "'");
  }
  NativeProgram prog = compile_point(params, {x1, x2}, b, cfg.shots);
  prog.model_id = cfg.problem + ":" + config_hash_hex(cfg);
  if (output.empty()) {
    log << serialize(prog) << "\n";
  } else {
    save_program(prog, output);
    log << "wrote " << output << "\n";
  }
}

struct ReproduceRow {
  std::string problem;
  double ideal_accuracy = 0.0;
  double sampler_accuracy = 0.0;
  double final_train_accuracy = 0.0;
};

/// reproduce: the full pipeline for all three problems with one set of
/// seeds. Regenerates datasets, trains, runs exact and noisy-sampler
/// inference, and writes a summary table. Timing fields are omitted so two
/// runs with the same config produce byte-identical files.
inline std::vector<ReproduceRow> cmd_reproduce(const RunConfig& cfg,
                                               std::ostream& log = std::cout) {
  std::vector<ReproduceRow> rows;
  for (const auto& d : kProblemDefaults) {
    RunConfig pc = cfg;
    pc.problem = d.name;
    pc.num_layers = 0;
    pc.infer_n = 0;
    log << "== " << pc.problem << " ==\n";
    cmd_gen_data(pc, log);
    const TrainOutcome t = cmd_train(pc, /*include_seconds=*/false, log);

    ReproduceRow row;
    row.problem = pc.problem;
    row.final_train_accuracy = t.metrics.test_accuracy.back();
    pc.backend = "exact";
    row.ideal_accuracy = cmd_infer(pc, log);
    pc.backend = "sampler";
    row.sampler_accuracy = cmd_infer(pc, log);
    rows.push_back(row);
  }

  nlohmann::json summary;
  summary["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    summary["rows"].push_back({{"problem", r.problem},
                               {"ideal_accuracy", r.ideal_accuracy},
                               {"sampler_accuracy", r.sampler_accuracy},
                               {"final_train_accuracy", r.final_train_accuracy}});
  }
  for (const auto& [k, v] : provenance(cfg)) summary[k] = v;
  const auto summary_file = out_path(cfg, "summary.json");
  std::ofstream out(summary_file, std::ios::binary);
  if (!out) throw IoError("cmd_reproduce: cannot open '" + summary_file.string() + "'");
  out << summary.dump(2) << "\n";
  if (!out) throw IoError("cmd_reproduce: write failed for '" + summary_file.string() + "'");

  log << "\nproblem      ideal   sampler\n";
  for (const auto& r : rows) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%-12s %.4f  %.4f", r.problem.c_str(), r.ideal_accuracy,
                  r.sampler_accuracy);
    log << buf << "\n";
  }
  log << "wrote " << summary_file.string() << "\n";
  return rows;
}

}  // namespace uqc::cli
