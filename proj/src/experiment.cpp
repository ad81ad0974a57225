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

#include "ctcsim/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "ctcsim/circuits.hpp"
#include "ctcsim/dctc.hpp"
#include "ctcsim/entanglement.hpp"
#include "ctcsim/protocols.hpp"

namespace ctcsim {

namespace {

constexpr double kMeasureTolerance = 1e-10;
constexpr double kFidelityFloor = 1.0 - 1e-10;

std::string format_double(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::string bits2(unsigned v) { return std::string{static_cast<char>('0' + ((v >> 1) & 1U)), static_cast<char>('0' + (v & 1U))}; }

// Symbolic name of the single-qubit state behind each CR outcome.
std::string_view identified_state_name(unsigned b1b2) {
  static constexpr std::array<std::string_view, 4> kNames = {"a|0> + b|1>", "a|0> - b|1>", "a|1> + b|0>",
                                                             "a|1> - b|0>"};
  return kNames[b1b2 & 3U];
}

// Collects postcondition failures; any entry turns the exit code into 4.
class InvariantLog {
 public:
  void check(bool ok, std::string what) {
    if (!ok) failures_.push_back(std::move(what));
  }
  bool ok() const { return failures_.empty(); }
  Json to_json() const {
    Json a = Json::array();
    for (const auto& f : failures_) a.push_back(f);
    return a;
  }

 private:
  std::vector<std::string> failures_;
};

void add_distribution(Json& row, const std::array<double, 4>& p) {
  for (unsigned k = 0; k < 4; ++k) row["p" + bits2(k)] = round15(p[k]);
}

void add_fixed_point(Json& row, const FixedPointResult& fp) {
  row["residual"] = round15(fp.residual);
  row["iterations"] = fp.iterations;
  row["averaged_terms"] = fp.averaged_terms;
  row["fp_space_dim"] = fp.fp_space_dim;
  row["unique"] = fp.unique;
  row["method"] = std::string(to_string(fp.method));
}

void check_record(InvariantLog& log, const DiscriminationRecord& rec, const SolverConfig& cfg,
                  const std::string& tag) {
  log.check(rec.correct(), tag + ": identified " + std::string(to_string(rec.identified)));
  log.check(rec.conclusive(), tag + ": CR outcome probability " + format_double(rec.outcome_probability, 15) +
                                  " below " + format_double(kConclusiveProbability, 15));
  log.check(rec.fixed_point.unique,
            tag + ": fixed-point space dimension " + std::to_string(rec.fixed_point.fp_space_dim));
  log.check(rec.fixed_point.residual < cfg.tolerance, tag + ": residual above tolerance");
}

Json discrimination_row(const DiscriminationRecord& rec) {
  Json row = Json::object();
  row["input_bell"] = std::string(to_string(rec.input_bell));
  row["alice_outcome"] = bits2(rec.alice_outcome);
  row["alice_probability"] = round15(rec.alice_probability);
  for (std::size_t k = 0; k < 2; ++k) {
    row["bob_re" + std::to_string(k)] = round15(rec.bob_state[k].real());
    row["bob_im" + std::to_string(k)] = round15(rec.bob_state[k].imag());
  }
  row["b1b2"] = bits2(rec.b1b2);
  row["identified"] = std::string(to_string(rec.identified));
  row["outcome_probability"] = round15(rec.outcome_probability);
  add_distribution(row, rec.cr_distribution);
  row["conclusive"] = rec.conclusive();
  row["correct"] = rec.correct();
  add_fixed_point(row, rec.fixed_point);
  return row;
}

void run_fixed_point(const AmplitudePair& amps, const SolverConfig& cfg, ResultDocument& doc) {
  const UnitaryOperator u = bhw_interaction(amps);
  bool all_unique = true;
  for (unsigned xy = 0; xy < 4; ++xy) {
    const BlockCode code = block_code(xy);
    const DensityOperator rho_cr = DensityOperator::pure(block_target_state(code, amps));
    auto [cr_out, fp] = apply_dctc(u, rho_cr, bhw_layout(), cfg);
    Json row = Json::object();
    row["cr_input"] = std::string(identified_state_name(xy)) + " (x) |0>";
    row["intended_outcome"] = bits2(xy);
    add_fixed_point(row, fp);
    std::array<double, 4> diag{};
    for (unsigned k = 0; k < 4; ++k) diag[k] = std::max(0.0, cr_out(k, k).real());
    add_distribution(row, diag);
    row["intended_is_fixed_point"] =
        trace_norm(ctc_map(u, rho_cr, DensityOperator::pure(states::basis(2, xy)), bhw_layout()).matrix() -
                   DensityOperator::pure(states::basis(2, xy)).matrix()) < cfg.tolerance;
    all_unique = all_unique && fp.unique;
    doc.rows.push_back(std::move(row));
  }
  doc.diagnostics["all_unique"] = all_unique;
  doc.diagnostics["degenerate_amplitudes"] = amps.degenerate();
}

void run_discriminate(const ExperimentSpec& spec, const AmplitudePair& amps, const SolverConfig& cfg,
                      ResultDocument& doc, InvariantLog& log) {
  std::vector<DiscriminationRecord> records;
  if (spec.exhaustive) {
    records = discriminate_bell_exhaustive(spec.bell, amps, cfg);
  } else {
    records.push_back(discriminate_bell(spec.bell, amps, cfg, spec.seed));
  }
  for (const auto& rec : records) {
    check_record(log, rec, cfg, std::string(to_string(rec.input_bell)) + "/alice " + bits2(rec.alice_outcome));
    doc.rows.push_back(discrimination_row(rec));
  }
}

void run_table1(const ExperimentSpec& spec, const AmplitudePair& amps, const SolverConfig& cfg,
                ResultDocument& doc, InvariantLog& log) {
  for (BellLabel bell : kAllBellLabels) {
    const auto rec = discriminate_bell(bell, amps, cfg, spec.seed);
    check_record(log, rec, cfg, std::string(to_string(bell)));
    Json row = Json::object();
    row["b1b2"] = bits2(rec.b1b2);
    row["state_identified"] = std::string(identified_state_name(rec.b1b2));
    row["conclusive_bell"] = std::string(to_string(rec.identified));
    row["input_bell"] = std::string(to_string(bell));
    row["alice_outcome"] = bits2(rec.alice_outcome);
    row["outcome_probability"] = round15(rec.outcome_probability);
    row["conclusive"] = rec.conclusive();
    row["correct"] = rec.correct();
    row["residual"] = round15(rec.fixed_point.residual);
    row["fp_space_dim"] = rec.fixed_point.fp_space_dim;
    doc.rows.push_back(std::move(row));
  }
}

void run_smolin(const ExperimentSpec& spec, const AmplitudePair& amps, const SolverConfig& cfg,
                ResultDocument& doc, InvariantLog& log) {
  const SmolinReport report = distill_smolin(amps, cfg, spec.seed);
  for (std::size_t k = 0; k < report.branches.size(); ++k) {
    const auto& br = report.branches[k];
    const std::string tag = "branch " + std::string(to_string(br.ab_bell));
    check_record(log, br.discrimination, cfg, tag);
    log.check(br.cd_fidelity >= kFidelityFloor, tag + ": CD fidelity " + format_double(br.cd_fidelity, 15));
    log.check(std::abs(br.cd_log_negativity - 1.0) <= kMeasureTolerance,
              tag + ": CD log negativity " + format_double(br.cd_log_negativity, 15));
    Json row = Json::object();
    row["branch"] = k;
    row["probability"] = round15(br.probability);
    row["ab_bell"] = std::string(to_string(br.ab_bell));
    row["b1b2"] = bits2(br.discrimination.b1b2);
    row["message"] = std::string(to_string(br.message));
    row["outcome_probability"] = round15(br.discrimination.outcome_probability);
    row["conclusive"] = br.discrimination.conclusive();
    row["correct"] = br.discrimination.correct();
    row["cd_fidelity"] = round15(br.cd_fidelity);
    row["cd_log_negativity"] = round15(br.cd_log_negativity);
    row["fp_space_dim"] = br.discrimination.fixed_point.fp_space_dim;
    doc.rows.push_back(std::move(row));
  }
  log.check(std::abs(report.baseline_log_negativity) <= kMeasureTolerance, "baseline E_N(AB:CD) is not 0");
  doc.diagnostics["baseline_log_negativity_AB_CD"] = round15(report.baseline_log_negativity);
  doc.diagnostics["distillable_entanglement_bound"] = Json::array({0.0, round15(report.baseline_log_negativity)});
  doc.diagnostics["branches_identified"] = static_cast<std::size_t>(
      std::count_if(report.branches.begin(), report.branches.end(),
                    [](const SmolinBranch& b) { return b.discrimination.correct() && b.discrimination.conclusive(); }));
  if (spec.mixed_state) {
    const auto mixed = distill_smolin_mixed(amps, cfg);
    Json m = Json::object();
    m["note"] = "experimental mixed-state reading; no correctness claim";
    add_distribution(m, mixed.cr_distribution);
    add_fixed_point(m, mixed.fixed_point);
    doc.diagnostics["mixed_state"] = std::move(m);
  }
}

void run_measures(ResultDocument& doc, InvariantLog& log) {
  const DensityOperator smolin = smolin_state();
  const RegisterLayout layout = smolin_layout();
  auto emit = [&](const std::string& state, const DensityOperator& rho, const RegisterLayout& lay,
                  const BipartiteCut& cut) {
    Json row = Json::object();
    const double en = log_negativity(rho, lay, cut);
    const auto eig = hermitian_eigenvalues(partial_transpose(rho, lay, cut));
    row["state"] = state;
    row["cut"] = cut.name();
    row["log_negativity"] = round15(en);
    row["ppt"] = is_ppt(rho, lay, cut, kMeasureTolerance);
    row["min_pt_eigenvalue"] = round15(eig.back());
    doc.rows.push_back(std::move(row));
    return en;
  };
  for (const auto& cut : smolin_cuts()) {
    const double en = emit("smolin", smolin, layout, cut);
    log.check(std::abs(en) <= kMeasureTolerance, "Smolin E_N across " + cut.name() + " is not 0");
    log.check(is_ppt(smolin, layout, cut, kMeasureTolerance), "Smolin state is not PPT across " + cut.name());
  }
  const double bell_en = emit("bell_phi+", DensityOperator::pure(states::bell(BellLabel::PhiPlus)),
                              RegisterLayout::chronology_respecting({"A", "B"}), BipartiteCut{{"A"}, {"B"}});
  log.check(std::abs(bell_en - 1.0) <= kMeasureTolerance, "Bell pair E_N is not 1");
  doc.diagnostics["smolin_purity"] = round15(smolin.purity());
}

// ---------------------------------------------------------------------------
// Serialization

std::string json_number(double x) {
  std::string s = format_double(round15(x), 15);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

void write_json(std::ostream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << inner << Json(it.key()).dump() << ": ";
        write_json(os, it.value(), indent + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << inner;
        write_json(os, j[i], indent + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float: os << json_number(j.get<double>()); return;
    default: os << j.dump(); return;
  }
}

std::string scalar_text(const Json& v, int digits) {
  switch (v.type()) {
    case Json::value_t::string: return v.get<std::string>();
    case Json::value_t::number_float: return format_double(v.get<double>(), digits);
    case Json::value_t::null: return "";
    default: return v.dump();
  }
}

std::string csv_field(const Json& v) {
  std::string s = scalar_text(v, 15);
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }
  return s;
}

std::vector<std::string> column_names(const Json& rows) {
  std::vector<std::string> cols;
  for (const auto& row : rows)
    for (auto it = row.begin(); it != row.end(); ++it)
      if (std::find(cols.begin(), cols.end(), it.key()) == cols.end()) cols.push_back(it.key());
  return cols;
}

std::string to_csv(const ResultDocument& doc) {
  std::ostringstream os;
  const auto cols = column_names(doc.rows);
  if (cols.empty()) return "";
  for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
  os << "\n";
  for (const auto& row : doc.rows) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (c) os << ",";
      if (row.contains(cols[c])) os << csv_field(row[cols[c]]);
    }
    os << "\n";
  }
  return os.str();
}

std::string to_table(const ResultDocument& doc) {
  std::ostringstream os;
  os << "experiment: " << doc.experiment << "\n";
  for (auto it = doc.parameters.begin(); it != doc.parameters.end(); ++it) {
    os << "  " << it.key() << " = " << scalar_text(it.value(), 10) << "\n";
  }
  const auto cols = column_names(doc.rows);
  if (!cols.empty()) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width(cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) width[c] = cols[c].size();
    for (const auto& row : doc.rows) {
      std::vector<std::string> line;
      for (std::size_t c = 0; c < cols.size(); ++c) {
        line.push_back(row.contains(cols[c]) ? scalar_text(row[cols[c]], 10) : "");
        width[c] = std::max(width[c], line.back().size());
      }
      cells.push_back(std::move(line));
    }
    os << "\n";
    for (std::size_t c = 0; c < cols.size(); ++c) {
      os << (c ? "  " : "") << cols[c] << std::string(width[c] - cols[c].size(), ' ');
    }
    os << "\n";
    for (const auto& line : cells) {
      for (std::size_t c = 0; c < cols.size(); ++c) {
        os << (c ? "  " : "") << line[c] << std::string(width[c] - line[c].size(), ' ');
      }
      os << "\n";
    }
  }
  if (!doc.diagnostics.empty()) {
    os << "\ndiagnostics:\n";
    for (auto it = doc.diagnostics.begin(); it != doc.diagnostics.end(); ++it) {
      const auto& v = it.value();
      os << "  " << it.key() << " = " << (v.is_structured() ? v.dump() : scalar_text(v, 10)) << "\n";
    }
  }
  return os.str();
}

}  // namespace

std::string_view to_string(ExperimentName n) {
  switch (n) {
    case ExperimentName::FixedPoint: return "fixed-point";
    case ExperimentName::Discriminate: return "discriminate";
    case ExperimentName::Table1: return "table1";
    case ExperimentName::Smolin: return "smolin";
    case ExperimentName::Measures: return "measures";
  }
  return "?";
}

ExperimentName parse_experiment_name(std::string_view text) {
  for (auto n : {ExperimentName::FixedPoint, ExperimentName::Discriminate, ExperimentName::Table1,
                 ExperimentName::Smolin, ExperimentName::Measures}) {
    if (to_string(n) == text) return n;
  }
  throw InvalidArgument("unknown experiment: " + std::string(text));
}

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Table: return "table";
    case OutputFormat::Json: return "json";
    case OutputFormat::Csv: return "csv";
  }
  return "?";
}

OutputFormat parse_output_format(std::string_view text) {
  for (auto f : {OutputFormat::Table, OutputFormat::Json, OutputFormat::Csv}) {
    if (to_string(f) == text) return f;
  }
  throw InvalidArgument("unknown output format: " + std::string(text));
}

double round15(double x) {
  if (!std::isfinite(x)) throw InvariantViolation("non-finite value in result document");
  return std::strtod(format_double(x, 15).c_str(), nullptr);
}

RunOutcome run(const ExperimentSpec& spec) {
  RunOutcome out;
  ResultDocument& doc = out.document;
  doc.experiment = std::string(to_string(spec.name));

  const SolverConfig cfg{spec.tolerance, spec.max_iterations};
  Json& p = doc.parameters;
  p["alpha"] = round15(spec.alpha);
  p["beta"] = (spec.alpha > 0.0 && spec.alpha < 1.0) ? round15(std::sqrt(1.0 - spec.alpha * spec.alpha)) : 0.0;
  p["tolerance"] = round15(spec.tolerance);
  p["max_iterations"] = spec.max_iterations;
  p["eigen_tolerance"] = round15(cfg.eigen_tolerance);
  p["seed"] = spec.seed;
  p["allow_degenerate"] = spec.allow_degenerate;
  if (spec.name == ExperimentName::Discriminate) {
    p["bell"] = std::string(to_string(spec.bell));
    p["exhaustive"] = spec.exhaustive;
  }
  if (spec.name == ExperimentName::Smolin) p["mixed_state"] = spec.mixed_state;

  InvariantLog log;
  try {
    cfg.validate();
    const AmplitudePair amps = AmplitudePair::from_alpha(spec.alpha, spec.allow_degenerate);
    switch (spec.name) {
      case ExperimentName::FixedPoint: run_fixed_point(amps, cfg, doc); break;
      case ExperimentName::Discriminate: run_discriminate(spec, amps, cfg, doc, log); break;
      case ExperimentName::Table1: run_table1(spec, amps, cfg, doc, log); break;
      case ExperimentName::Smolin: run_smolin(spec, amps, cfg, doc, log); break;
      case ExperimentName::Measures: run_measures(doc, log); break;
    }
  } catch (const NonConvergence& e) {
    doc.diagnostics["error"] = e.what();
    doc.diagnostics["best_residual"] = std::isfinite(e.best_residual()) ? round15(e.best_residual()) : -1.0;
    out.exit_code = kExitNonConvergence;
    return out;
  } catch (const InvariantViolation& e) {
    doc.diagnostics["error"] = e.what();
    out.exit_code = kExitInvariantViolation;
    return out;
  } catch (const InvalidArgument& e) {
    doc.diagnostics["error"] = e.what();
    out.exit_code = kExitUsage;
    return out;
  }
  doc.diagnostics["invariants_held"] = log.ok();
  doc.diagnostics["violations"] = log.to_json();
  out.exit_code = log.ok() ? kExitSuccess : kExitInvariantViolation;
  return out;
}

std::string serialize(const ResultDocument& doc, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: {
      Json top = Json::object();
      top["experiment"] = doc.experiment;
      top["parameters"] = doc.parameters;
      top["rows"] = doc.rows;
      top["diagnostics"] = doc.diagnostics;
      std::ostringstream os;
      write_json(os, top, 0);
      os << "\n";
      return os.str();
    }
    case OutputFormat::Csv: return to_csv(doc);
    case OutputFormat::Table: return to_table(doc);
  }
  return {};
}

ResultDocument parse_document(std::string_view json_text) {
  const Json j = Json::parse(json_text);
  for (const char* key : {"experiment", "parameters", "rows", "diagnostics"}) {
    if (!j.contains(key)) throw InvalidArgument(std::string("result document lacks key: ") + key);
  }
  return ResultDocument{j.at("experiment").get<std::string>(), j.at("parameters"), j.at("rows"),
                        j.at("diagnostics")};
}

void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace ctcsim
