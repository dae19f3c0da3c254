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

#include <stdexcept>
#include <string>
#include <utility>

namespace uqc {

/// Base class of every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Filesystem or stream failure (missing file, unwritable path, ...).
struct IoError : Error {
  using Error::Error;
};

/// Structurally invalid input text (malformed CSV row, bad number, ...).
struct ParseError : Error {
  using Error::Error;
};

/// JSON payload that does not match the expected schema. The message always
/// starts with the path of the offending field, e.g. "gates[2].theta: ...".
struct SchemaError : ParseError {
  SchemaError(std::string field_path, const std::string& what)
      : ParseError(field_path + ": " + what), field_path_(std::move(field_path)) {}

  const std::string& field_path() const { return field_path_; }

 private:
  std::string field_path_;
};

/// Well-formed input that violates a domain constraint (label out of range,
/// unsupported gate, empty batch, mismatched dimensions, ...).
struct ValidationError : Error {
  using Error::Error;
};

/// Bad run configuration: unknown problem name, inconsistent flags, and so
/// on. The CLI maps this class to its own exit code.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace uqc
