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

#pragma once

#include <array>
#include <cstdint>

#include "ctcsim/qmath.hpp"

namespace ctcsim {

/// Real amplitudes (alpha, beta) of alpha|0> + beta|1>.
class AmplitudePair {
 public:
  static constexpr double kNormTolerance = 1e-12;
  /// |alpha - beta| below this counts as the degenerate case alpha = beta.
  static constexpr double kDegeneracyTolerance = 1e-6;

  AmplitudePair(double alpha, double beta, bool allow_degenerate = false);

  /// beta = sqrt(1 - alpha^2).
  static AmplitudePair from_alpha(double alpha, bool allow_degenerate = false);

  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  bool degenerate() const;

 private:
  double alpha_;
  double beta_;
};

/// Raised when a protocol needs alpha != beta and got alpha = beta.
class DegenerateAmplitudes : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Square matrix with U^dagger U = I within kUnitarityTolerance.
class UnitaryOperator {
 public:
  static constexpr double kUnitarityTolerance = 1e-10;

  explicit UnitaryOperator(ComplexMatrix m);

  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

  UnitaryOperator adjoint() const { return UnitaryOperator(m_.adjoint()); }
  friend UnitaryOperator operator*(const UnitaryOperator& a, const UnitaryOperator& b) {
    return UnitaryOperator(a.matrix() * b.matrix());
  }

 private:
  ComplexMatrix m_;
};

/// max |U^dagger U - I|.
double unitarity_defect(const ComplexMatrix& m);

/// Two-bit selector xy for the controlled blocks, x is the first CR qubit.
enum class BlockCode : std::uint8_t { k00 = 0, k01 = 1, k10 = 2, k11 = 3 };

BlockCode block_code(unsigned bits);

/// The 2x2 rotation that each block applies to the first CTC qubit before
/// its Pauli layer.
ComplexMatrix block_rotation(BlockCode code, const AmplitudePair& amps);

/// Two-qubit block acting on the CTC register when the CR register reads
/// |xy>. Rotation on the first qubit first, then the Pauli layer:
///   U_00 = R00 (x) I             R00 = [[a, b], [-b, a]]
///   U_01 = (X (x) X)(R01 (x) I)  R01 = [[b, a], [a, -b]]
///   U_10 = (X (x) I)(R10 (x) I)  R10 = [[b, a], [-a, b]]
///   U_11 = R11 (x) X             R11 = [[a, b], [b, -a]]
UnitaryOperator block_unitary(BlockCode code, const AmplitudePair& amps);

/// The state block_unitary(code) sends to |xy> (up to global phase):
/// {(a|0>+b|1>)|0>, (a|0>-b|1>)|0>, (b|0>+a|1>)|0>, (b|0>-a|1>)|0>}.
StateVector block_target_state(BlockCode code, const AmplitudePair& amps);

/// Single-qubit state identified by outcome `code`:
/// a|0>+b|1>, a|0>-b|1>, b|0>+a|1>, b|0>-a|1>.
StateVector block_target_qubit(BlockCode code, const AmplitudePair& amps);

/// SWAP of two equal-size registers: (A, B) -> (B, A) on
/// 2 * qubits_per_side qubits.
UnitaryOperator swap_registers(std::size_t qubits_per_side);

/// Full four-qubit interaction on (CR1, CR2, CTC1, CTC2):
///   sum_xy |xy><xy|_CR (x) U_xy  applied after swapping CR with CTC.
UnitaryOperator bhw_interaction(const AmplitudePair& amps);

/// Register layout matching bhw_interaction.
RegisterLayout bhw_layout();

/// Rank-2 projectors |B><B| (x) I on qubits 1,2 of a three-qubit register,
/// indexed in kAllBellLabels order.
std::array<ComplexMatrix, 4> bell_projectors();

/// Embed a single-qubit operator at `position` of an n-qubit register.
ComplexMatrix embed_single(const ComplexMatrix& op, std::size_t position, std::size_t num_qubits);

}  // namespace ctcsim
