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

// Protocol chain built on the D-CTC solver:
//
//  1. Alice teleports a known qubit a|0> + b|1> through the shared Bell
//     pair and Bob applies the Pauli correction for her outcome. The
//     residual Pauli error on Bob's qubit identifies the shared pair.
//  2. Bob feeds his qubit (with an ancilla |0>) as the CR input of the
//     four-qubit swap + controlled-block interaction and measures the CR
//     register in the computational basis.
//  3. Applied to the AB half of a Smolin state, the announced label tells
//     Charlie and Dan which Bell pair they hold.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ctcsim/circuits.hpp"
#include "ctcsim/dctc.hpp"
#include "ctcsim/qmath.hpp"

namespace ctcsim {

/// CR outcome b1b2 that names each Bell state (00 Phi+, 01 Phi-, 10 Psi+,
/// 11 Psi-).
unsigned table1_code(BellLabel label);
BellLabel table1_label(unsigned b1b2);

/// Alice's two-bit Bell-measurement outcome as used by Bob's correction
/// table (00 -> I, 01 -> X, 10 -> Z, 11 -> Y). Outcome bits name the
/// projector Alice obtained: 00 Phi+, 01 Psi+, 10 Phi-, 11 Psi-.
BellLabel alice_outcome_label(unsigned outcome);
const ComplexMatrix& correction(unsigned outcome);

/// Probability of each Alice outcome (indexed by outcome bits) for the
/// three-qubit state psi (x) |bell>.
std::array<double, 4> alice_outcome_probabilities(BellLabel bell, const AmplitudePair& amps);

/// Bob's corrected qubit after Alice reports `outcome`.
StateVector teleport_and_correct(BellLabel bell, const AmplitudePair& amps, unsigned outcome);

/// Runs all four outcomes, checks that Bob ends with the same physical
/// state in every branch and returns it. Throws InvariantViolation if not.
StateVector teleport_and_correct_exhaustive(BellLabel bell, const AmplitudePair& amps);

/// A protocol-level postcondition did not hold.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Probability floor for calling a CR measurement conclusive.
inline constexpr double kConclusiveProbability = 1.0 - 1e-9;

struct DiscriminationRecord {
  BellLabel input_bell;
  unsigned alice_outcome;
  double alice_probability;
  StateVector bob_state;
  /// Most probable CR outcome.
  unsigned b1b2;
  BellLabel identified;
  double outcome_probability;
  /// Born probabilities of the four CR outcomes, indexed by b1b2.
  std::array<double, 4> cr_distribution;
  FixedPointResult fixed_point;

  bool conclusive() const { return outcome_probability >= kConclusiveProbability; }
  bool correct() const { return identified == input_bell; }
};

/// One run with a fixed Alice outcome.
DiscriminationRecord discriminate_bell_with_outcome(BellLabel bell, const AmplitudePair& amps,
                                                    const SolverConfig& cfg, unsigned alice_outcome);

/// One run with Alice's outcome drawn from its Born distribution using
/// `seed`. Throws DegenerateAmplitudes for alpha = beta.
DiscriminationRecord discriminate_bell(BellLabel bell, const AmplitudePair& amps, const SolverConfig& cfg,
                                       std::uint64_t seed);

/// All four Alice outcomes, indexed by outcome bits.
std::vector<DiscriminationRecord> discriminate_bell_exhaustive(BellLabel bell, const AmplitudePair& amps,
                                                               const SolverConfig& cfg);

struct SmolinBranch {
  BellLabel ab_bell;
  double probability;
  DiscriminationRecord discrimination;
  /// Label announced to Charlie and Dan.
  BellLabel message;
  DensityOperator cd_state;
  /// <message| rho_CD |message>.
  double cd_fidelity;
  double cd_log_negativity;
};

struct SmolinReport {
  std::vector<SmolinBranch> branches;
  /// E_N(AB:CD) of the Smolin state before the protocol.
  double baseline_log_negativity;

  bool all_identified() const;
};

/// Branch-wise protocol: one branch per matched Bell pair, probability 1/4
/// each.
SmolinReport distill_smolin(const AmplitudePair& amps, const SolverConfig& cfg, std::uint64_t seed);

/// Experimental: Bob's qubit averaged over the four Smolin branches goes
/// through the solver as one mixed CR input. No correctness claim.
struct MixedSmolinReport {
  DensityOperator bob_state;
  std::array<double, 4> cr_distribution;
  FixedPointResult fixed_point;
};

MixedSmolinReport distill_smolin_mixed(const AmplitudePair& amps, const SolverConfig& cfg);

}  // namespace ctcsim
