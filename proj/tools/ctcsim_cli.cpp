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

// ctcsim <experiment> [options]
//
// Exit codes: 0 success, 2 usage error, 3 solver non-convergence,
// 4 invariant violation.

#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "ctcsim/experiment.hpp"

namespace {

void add_common_options(CLI::App* sub, ctcsim::ExperimentSpec& spec, std::string& format) {
  sub->add_option("--alpha", spec.alpha, "Amplitude alpha in (0, 1); beta = sqrt(1 - alpha^2)")
      ->capture_default_str();
  sub->add_option("--tolerance", spec.tolerance, "Trace-norm residual required of the fixed point")
      ->capture_default_str();
  sub->add_option("--max-iterations", spec.max_iterations, "Solver step budget")->capture_default_str();
  sub->add_option("--seed", spec.seed, "Seed for Alice's measurement outcome")->capture_default_str();
  sub->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  sub->add_option("--output", spec.output_path, "Write output to this file instead of stdout");
  sub->add_flag("--allow-degenerate", spec.allow_degenerate, "Permit alpha = beta (diagnostics only)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deutschian CTC circuit experiments"};
  app.require_subcommand(1);

  ctcsim::ExperimentSpec spec;
  std::string format = "table";
  std::string bell = "phi+";

  const std::map<std::string, ctcsim::ExperimentName> names = {
      {"fixed-point", ctcsim::ExperimentName::FixedPoint},
      {"discriminate", ctcsim::ExperimentName::Discriminate},
      {"table1", ctcsim::ExperimentName::Table1},
      {"smolin", ctcsim::ExperimentName::Smolin},
      {"measures", ctcsim::ExperimentName::Measures},
  };
  const std::map<std::string, std::string> help = {
      {"fixed-point", "Fixed-point diagnostics of the four-qubit CTC interaction"},
      {"discriminate", "Teleport, correct and discriminate one Bell state"},
      {"table1", "Discriminate all four Bell states (Bell-state lookup table)"},
      {"smolin", "Branch-wise 1-ebit distillation from the Smolin state"},
      {"measures", "Logarithmic negativity of the Smolin state and a Bell pair"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, _] : names) {
    auto* sub = app.add_subcommand(name, help.at(name));
    add_common_options(sub, spec, format);
    subs[name] = sub;
  }
  subs["discriminate"]
      ->add_option("--bell", bell, "Shared Bell state: phi+, phi-, psi+, psi-")
      ->check(CLI::IsMember({"phi+", "phi-", "psi+", "psi-"}))
      ->capture_default_str();
  subs["discriminate"]->add_flag("--exhaustive", spec.exhaustive, "Run all four of Alice's outcomes");
  subs["smolin"]->add_flag("--mixed-state", spec.mixed_state,
                           "Also run the mixed-state reading (experimental, no correctness claim)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ctcsim::kExitUsage;
  }

  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) spec.name = names.at(name);
  }
  spec.output_format = ctcsim::parse_output_format(format);
  spec.bell = ctcsim::parse_bell_label(bell);

  const ctcsim::RunOutcome outcome = ctcsim::run(spec);
  const std::string bytes = ctcsim::serialize(outcome.document, spec.output_format);
  if (spec.output_path) {
    try {
      ctcsim::write_file(*spec.output_path, bytes);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return ctcsim::kExitUsage;
    }
  } else {
    std::cout << bytes;
  }
  if (outcome.exit_code != ctcsim::kExitSuccess && outcome.document.diagnostics.contains("error")) {
    std::cerr << "error: " << outcome.document.diagnostics["error"].get<std::string>() << "\n";
  }
  return outcome.exit_code;
}
