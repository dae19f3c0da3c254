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

#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "uqc/errors.hpp"
#include "uqc/rng.hpp"
#include "uqc/version.hpp"

// Synthetic 2D classification problems on the square [-1, 1]^2, ground-truth
// labelling, and CSV persistence.

namespace uqc {

/// The three benchmark problems. Class regions:
///   Circle      class 1 inside the disk of radius sqrt(2/pi) at the origin
///               (the disk covers exactly half the square), class 0 outside.
///   Sine        class 1 on or above the curve x2 = 0.8 sin(pi x1).
///   TwoCircles  class 1 inside the disk of radius 1 at (-1,-1), class 2
///               inside the disk of radius 0.4 at (0.3, 0.3), class 0 else.
/// Boundary points count as inside (<= / >=).
enum class Problem { kCircle, kSine, kTwoCircles };

inline constexpr double kCircleRadiusSq = 2.0 / std::numbers::pi;
inline constexpr double kSineAmplitude = 0.8;
inline constexpr double kBigCircleRadius = 1.0;
inline constexpr double kSmallCircleRadius = 0.4;
inline constexpr double kBigCircleCenter[2] = {-1.0, -1.0};
inline constexpr double kSmallCircleCenter[2] = {0.3, 0.3};

inline int num_classes(Problem p) { return p == Problem::kTwoCircles ? 3 : 2; }

inline const char* problem_name(Problem p) {
  switch (p) {
    case Problem::kCircle: return "circle";
    case Problem::kSine: return "sine";
    case Problem::kTwoCircles: return "two-circles";
  }
  return "?";
}

inline std::optional<Problem> problem_from_name(std::string_view name) {
  if (name == "circle") return Problem::kCircle;
  if (name == "sine") return Problem::kSine;
  if (name == "two-circles") return Problem::kTwoCircles;
  return std::nullopt;
}

struct Point2 {
  double x1 = 0.0, x2 = 0.0;
};

struct LabeledPoint {
  Point2 point;
  int label = 0;
};

struct Dataset {
  Problem problem = Problem::kCircle;
  std::vector<LabeledPoint> points;
  std::uint64_t seed = 0;
};

/// Ground-truth label of a point under the problem's separating margins.
inline int label_of(Problem problem, Point2 p) {
  switch (problem) {
    case Problem::kCircle:
      return (p.x1 * p.x1 + p.x2 * p.x2 <= kCircleRadiusSq) ? 1 : 0;
    case Problem::kSine:
      return (p.x2 >= kSineAmplitude * std::sin(std::numbers::pi * p.x1)) ? 1 : 0;
    case Problem::kTwoCircles: {
      // The two disks are disjoint (centre distance ~1.84 > 1.4), so the
      // order of the checks cannot change any label.
      const double d1x = p.x1 - kBigCircleCenter[0];
      const double d1y = p.x2 - kBigCircleCenter[1];
      if (d1x * d1x + d1y * d1y <= kBigCircleRadius * kBigCircleRadius) return 1;
      const double d2x = p.x1 - kSmallCircleCenter[0];
      const double d2y = p.x2 - kSmallCircleCenter[1];
      if (d2x * d2x + d2y * d2y <= kSmallCircleRadius * kSmallCircleRadius) return 2;
      return 0;
    }
  }
  return 0;
}

/// n i.i.d. uniform points on [-1, 1]^2, labelled by label_of. A pure
/// function of (problem, n, seed).
inline Dataset generate(Problem problem, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ValidationError("generate: dataset size must be >= 1");
  Dataset d{problem, {}, seed};
  d.points.reserve(n);
  CounterRng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    Point2 p;
    p.x1 = rng.next_symmetric();
    p.x2 = rng.next_symmetric();
    d.points.push_back({p, label_of(problem, p)});
  }
  return d;
}

/// Shortest decimal string that parses back to exactly the same double.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text, const std::string& where) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ParseError(where + ": bad number '" + std::string(text) + "'");
  }
  return v;
}

/// Writes `x1,x2,label` rows preceded by `# key=value` provenance comments.
/// Doubles are written in shortest round-trip form (lossless), lines end in
/// LF.
inline void save_csv(const Dataset& d, const std::filesystem::path& path,
                     std::span<const std::string> extra_comments = {}) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("save_csv: cannot open '" + path.string() + "' for writing");
  out << "# version=" << UQC_VERSION << "\n";
  out << "# problem=" << problem_name(d.problem) << "\n";
  out << "# seed=" << d.seed << "\n";
  for (const auto& line : extra_comments) out << "# " << line << "\n";
  out << "x1,x2,label\n";
  for (const auto& lp : d.points) {
    out << format_double(lp.point.x1) << ',' << format_double(lp.point.x2) << ','
        << lp.label << "\n";
  }
  if (!out) throw IoError("save_csv: write failed for '" + path.string() + "'");
}

/// Loads a dataset CSV. The problem is taken from the `# problem=` comment
/// unless `expected` is given, in which case the two must agree. Labels are
/// validated against the problem's class count.
inline Dataset load_csv(const std::filesystem::path& path,
                        std::optional<Problem> expected = std::nullopt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("load_csv: cannot open '" + path.string() + "'");

  Dataset d;
  std::map<std::string, std::string> meta;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path.filename().string() + ":" + std::to_string(line_no);
    if (line[0] == '#') {
      std::string body = line.substr(1);
      if (!body.empty() && body.front() == ' ') body.erase(0, 1);
      const auto eq = body.find('=');
      if (eq != std::string::npos) meta[body.substr(0, eq)] = body.substr(eq + 1);
      continue;
    }
    if (!header_seen) {
      if (line != "x1,x2,label") throw ParseError(where + ": expected header 'x1,x2,label'");
      header_seen = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = (c1 == std::string::npos) ? std::string::npos : line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos || line.find(',', c2 + 1) != std::string::npos) {
      throw ParseError(where + ": expected 3 comma-separated fields");
    }
    LabeledPoint lp;
    lp.point.x1 = parse_double(std::string_view(line).substr(0, c1), where);
    lp.point.x2 = parse_double(std::string_view(line).substr(c1 + 1, c2 - c1 - 1), where);
    const std::string_view label_text = std::string_view(line).substr(c2 + 1);
    int label = 0;
    const auto res = std::from_chars(label_text.data(), label_text.data() + label_text.size(), label);
    if (res.ec != std::errc{} || res.ptr != label_text.data() + label_text.size()) {
      throw ParseError(where + ": bad label '" + std::string(label_text) + "'");
    }
    lp.label = label;
    d.points.push_back(lp);
  }
  if (!header_seen) throw ParseError(path.filename().string() + ": missing 'x1,x2,label' header");
  if (d.points.empty()) throw ValidationError(path.filename().string() + ": dataset is empty");

  std::optional<Problem> stored;
  if (auto it = meta.find("problem"); it != meta.end()) {
    stored = problem_from_name(it->second);
    if (!stored) throw ParseError(path.filename().string() + ": unknown problem '" + it->second + "'");
  }
  if (expected && stored && *expected != *stored) {
    throw ValidationError(path.filename().string() + ": file is for problem '" +
                          problem_name(*stored) + "', expected '" + problem_name(*expected) + "'");
  }
  if (!expected && !stored) {
    throw ValidationError(path.filename().string() + ": no '# problem=' comment and no expected problem given");
  }
  d.problem = expected ? *expected : *stored;
  if (auto it = meta.find("seed"); it != meta.end()) {
    std::uint64_t s = 0;
    const auto res = std::from_chars(it->second.data(), it->second.data() + it->second.size(), s);
    if (res.ec == std::errc{}) d.seed = s;
  }

  const int classes = num_classes(d.problem);
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    const int label = d.points[i].label;
    if (label < 0 || label >= classes) {
      throw ValidationError(path.filename().string() + ": row " + std::to_string(i + 1) +
                            " has label " + std::to_string(label) + ", valid range is [0, " +
                            std::to_string(classes) + ")");
    }
  }
  return d;
}

}  // namespace uqc
