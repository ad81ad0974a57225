// Copyright 2026 The ctcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Named experiments behind the ctcsim CLI and their result documents.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ctcsim/qmath.hpp"

namespace ctcsim {

using Json = nlohmann::ordered_json;

enum class ExperimentName { FixedPoint, Discriminate, Table1, Smolin, Measures };
enum class OutputFormat { Table, Json, Csv };

std::string_view to_string(ExperimentName n);
ExperimentName parse_experiment_name(std::string_view text);
std::string_view to_string(OutputFormat f);
OutputFormat parse_output_format(std::string_view text);

struct ExperimentSpec {
  ExperimentName name = ExperimentName::Table1;
  /// beta is always sqrt(1 - alpha^2).
  double alpha = 0.6;
  double tolerance = 1e-12;
  std::size_t max_iterations = 1'000'000;
  std::uint64_t seed = 0;
  OutputFormat output_format = OutputFormat::Table;
  std::optional<std::string> output_path;
  bool allow_degenerate = false;
  /// `discriminate` only.
  BellLabel bell = BellLabel::PhiPlus;
  bool exhaustive = false;
  /// `smolin` only: also run the mixed-state reading.
  bool mixed_state = false;
};

enum ExitCode : int {
  kExitSuccess = 0,
  kExitUsage = 2,
  kExitNonConvergence = 3,
  kExitInvariantViolation = 4,
};

/// {experiment, parameters, rows, diagnostics}. Rows are flat objects of
/// scalars (string, number, bool). All numbers are finite and already
/// rounded to 15 significant digits.
struct ResultDocument {
  std::string experiment;
  Json parameters = Json::object();
  Json rows = Json::array();
  Json diagnostics = Json::object();

  bool operator==(const ResultDocument&) const = default;
};

struct RunOutcome {
  int exit_code = kExitSuccess;
  ResultDocument document;
};

RunOutcome run(const ExperimentSpec& spec);

/// Rounds to 15 significant digits; throws InvariantViolation if not finite.
double round15(double x);

std::string serialize(const ResultDocument& doc, OutputFormat format);
ResultDocument parse_document(std::string_view json_text);

/// Writes `bytes` to `path`; throws std::runtime_error if it cannot.
void write_file(const std::string& path, std::string_view bytes);

}  // namespace ctcsim
