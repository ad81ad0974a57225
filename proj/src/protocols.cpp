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

#include "ctcsim/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <string>

#include "ctcsim/entanglement.hpp"

namespace ctcsim {

namespace {

constexpr double kSamePhysicalState = 1e-12;

void require_outcome(unsigned bits) {
  if (bits > 3) throw InvalidArgument("outcome must be a two-bit value, got " + std::to_string(bits));
}

std::size_t bell_index(BellLabel b) {
  return static_cast<std::size_t>(std::find(kAllBellLabels.begin(), kAllBellLabels.end(), b) -
                                  kAllBellLabels.begin());
}

// psi (x) |bell>, qubit order (Alice's prepared qubit, Alice's half, Bob).
StateVector teleport_input(BellLabel bell, const AmplitudePair& amps) {
  return kron(StateVector({amps.alpha(), amps.beta()}), states::bell(bell));
}

// Uniform double in [0, 1) from the top 53 bits; stable across standard
// library implementations.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::uint64_t branch_seed(std::uint64_t seed, std::size_t branch) {
  return seed ^ (0x9E3779B97F4A7C15ULL * (branch + 1));
}

std::array<double, 4> computational_distribution(const DensityOperator& rho) {
  std::array<double, 4> p{};
  for (std::size_t i = 0; i < 4; ++i) p[i] = std::max(0.0, rho(i, i).real());
  return p;
}

}  // namespace

unsigned table1_code(BellLabel label) {
  switch (label) {
    case BellLabel::PhiPlus: return 0b00;
    case BellLabel::PhiMinus: return 0b01;
    case BellLabel::PsiPlus: return 0b10;
    case BellLabel::PsiMinus: return 0b11;
  }
  throw InvalidArgument("unknown Bell label");
}

BellLabel table1_label(unsigned b1b2) {
  require_outcome(b1b2);
  static constexpr std::array<BellLabel, 4> kByCode = {BellLabel::PhiPlus, BellLabel::PhiMinus,
                                                        BellLabel::PsiPlus, BellLabel::PsiMinus};
  return kByCode[b1b2];
}

BellLabel alice_outcome_label(unsigned outcome) {
  require_outcome(outcome);
  static constexpr std::array<BellLabel, 4> kByOutcome = {BellLabel::PhiPlus, BellLabel::PsiPlus,
                                                           BellLabel::PhiMinus, BellLabel::PsiMinus};
  return kByOutcome[outcome];
}

const ComplexMatrix& correction(unsigned outcome) {
  require_outcome(outcome);
  switch (outcome) {
    case 0b00: return gates::I();
    case 0b01: return gates::X();
    case 0b10: return gates::Z();
    default: return gates::Y();
  }
}

std::array<double, 4> alice_outcome_probabilities(BellLabel bell, const AmplitudePair& amps) {
  const auto psi = teleport_input(bell, amps).as_column();
  const auto projectors = bell_projectors();
  std::array<double, 4> p{};
  for (unsigned outcome = 0; outcome < 4; ++outcome) {
    const auto& proj = projectors[bell_index(alice_outcome_label(outcome))];
    p[outcome] = (psi.adjoint() * proj * psi)(0, 0).real();
  }
  return p;
}

StateVector teleport_and_correct(BellLabel bell, const AmplitudePair& amps, unsigned outcome) {
  require_outcome(outcome);
  const StateVector joint = teleport_input(bell, amps);
  const StateVector alice = states::bell(alice_outcome_label(outcome));
  // Bob's conditional state: (<alice| (x) I) |joint>.
  std::vector<Complex> bob(2);
  for (std::size_t ij = 0; ij < 4; ++ij)
    for (std::size_t k = 0; k < 2; ++k) bob[k] += std::conj(alice[ij]) * joint[ij * 2 + k];
  const double norm = std::sqrt(std::norm(bob[0]) + std::norm(bob[1]));
  if (norm == 0.0) throw InvariantViolation("Alice outcome has zero probability");
  for (auto& z : bob) z /= norm;
  return apply(correction(outcome), StateVector(std::move(bob)));
}

StateVector teleport_and_correct_exhaustive(BellLabel bell, const AmplitudePair& amps) {
  const StateVector first = teleport_and_correct(bell, amps, 0);
  for (unsigned outcome = 1; outcome < 4; ++outcome) {
    const StateVector other = teleport_and_correct(bell, amps, outcome);
    if (std::abs(overlap(first, other) - 1.0) > kSamePhysicalState) {
      throw InvariantViolation("Bob's corrected state depends on Alice's outcome");
    }
  }
  return first;
}

DiscriminationRecord discriminate_bell_with_outcome(BellLabel bell, const AmplitudePair& amps,
                                                    const SolverConfig& cfg, unsigned alice_outcome) {
  if (amps.degenerate()) throw DegenerateAmplitudes("Bell discrimination needs alpha != beta");
  require_outcome(alice_outcome);
  const auto alice_probs = alice_outcome_probabilities(bell, amps);
  StateVector bob = teleport_and_correct(bell, amps, alice_outcome);

  const DensityOperator rho_cr = DensityOperator::pure(kron(bob, states::ket("0")));
  auto [cr_out, fp] = apply_dctc(bhw_interaction(amps), rho_cr, bhw_layout(), cfg);
  const auto dist = computational_distribution(cr_out);
  const auto b1b2 = static_cast<unsigned>(std::max_element(dist.begin(), dist.end()) - dist.begin());

  return DiscriminationRecord{bell,  alice_outcome,      alice_probs[alice_outcome], std::move(bob), b1b2,
                              table1_label(b1b2), dist[b1b2], dist, std::move(fp)};
}

DiscriminationRecord discriminate_bell(BellLabel bell, const AmplitudePair& amps, const SolverConfig& cfg,
                                       std::uint64_t seed) {
  if (amps.degenerate()) throw DegenerateAmplitudes("Bell discrimination needs alpha != beta");
  const auto probs = alice_outcome_probabilities(bell, amps);
  std::mt19937_64 rng(seed);
  const double u = unit_uniform(rng);
  unsigned outcome = 3;
  double cumulative = 0.0;
  for (unsigned k = 0; k < 4; ++k) {
    cumulative += probs[k];
    if (u < cumulative) {
      outcome = k;
      break;
    }
  }
  return discriminate_bell_with_outcome(bell, amps, cfg, outcome);
}

std::vector<DiscriminationRecord> discriminate_bell_exhaustive(BellLabel bell, const AmplitudePair& amps,
                                                               const SolverConfig& cfg) {
  if (amps.degenerate()) throw DegenerateAmplitudes("Bell discrimination needs alpha != beta");
  std::array<std::optional<DiscriminationRecord>, 4> slots;
  std::array<std::exception_ptr, 4> errors;
#pragma omp parallel for schedule(static)
  for (int outcome = 0; outcome < 4; ++outcome) {
    try {
      slots[outcome] = discriminate_bell_with_outcome(bell, amps, cfg, static_cast<unsigned>(outcome));
    } catch (...) {
      errors[outcome] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<DiscriminationRecord> out;
  out.reserve(4);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

bool SmolinReport::all_identified() const {
  return std::all_of(branches.begin(), branches.end(), [](const SmolinBranch& b) {
    return b.discrimination.correct() && b.discrimination.conclusive();
  });
}

SmolinReport distill_smolin(const AmplitudePair& amps, const SolverConfig& cfg, std::uint64_t seed) {
  const RegisterLayout layout = smolin_layout();
  const auto cuts = smolin_cuts();
  const BipartiteCut cd_cut{{"C"}, {"D"}};
  const RegisterLayout cd_layout = RegisterLayout::chronology_respecting({"C", "D"});

  SmolinReport report{{}, log_negativity(smolin_state(), layout, cuts[0])};
  for (std::size_t k = 0; k < kAllBellLabels.size(); ++k) {
    const BellLabel ab = kAllBellLabels[k];
    // This branch of the proper mixture: |ab>_AB (x) |ab>_CD.
    const DensityOperator branch = DensityOperator::pure(kron(states::bell(ab), states::bell(ab)));
    DiscriminationRecord rec = discriminate_bell(ab, amps, cfg, branch_seed(seed, k));
    const BellLabel message = rec.identified;

    const std::vector<std::string> keep{"C", "D"};
    DensityOperator cd = partial_trace(branch, layout, keep);
    const auto named = states::bell(message).as_column();
    const double fidelity = (named.adjoint() * cd.matrix() * named)(0, 0).real();
    const double en = log_negativity(cd, cd_layout, cd_cut);
    report.branches.push_back(SmolinBranch{ab, 0.25, std::move(rec), message, std::move(cd), fidelity, en});
  }
  return report;
}

MixedSmolinReport distill_smolin_mixed(const AmplitudePair& amps, const SolverConfig& cfg) {
  if (amps.degenerate()) throw DegenerateAmplitudes("Bell discrimination needs alpha != beta");
  ComplexMatrix bob(2, 2);
  for (BellLabel b : kAllBellLabels) {
    const auto v = teleport_and_correct(b, amps, 0).as_column();
    bob += v * v.adjoint() * Complex(0.25);
  }
  DensityOperator bob_state = DensityOperator::from_numerical(bob);
  const DensityOperator ancilla = DensityOperator::pure(states::ket("0"));
  auto [cr_out, fp] = apply_dctc(bhw_interaction(amps), kron(bob_state, ancilla), bhw_layout(), cfg);
  return MixedSmolinReport{std::move(bob_state), computational_distribution(cr_out), std::move(fp)};
}

}  // namespace ctcsim
