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

#include "ctcsim/circuits.hpp"

#include <cmath>
#include <string>

namespace ctcsim {

AmplitudePair::AmplitudePair(double alpha, double beta, bool allow_degenerate)
    : alpha_(alpha), beta_(beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) throw InvalidArgument("amplitudes must be finite");
  if (!(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0)) {
    throw InvalidArgument("amplitudes must lie strictly between 0 and 1");
  }
  if (std::abs(alpha * alpha + beta * beta - 1.0) > kNormTolerance) {
    throw InvalidArgument("amplitudes are not normalized");
  }
  if (!allow_degenerate && degenerate()) {
    throw DegenerateAmplitudes("alpha = beta is excluded (set allow_degenerate to study it)");
  }
}

AmplitudePair AmplitudePair::from_alpha(double alpha, bool allow_degenerate) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie strictly between 0 and 1");
  return AmplitudePair(alpha, std::sqrt(1.0 - alpha * alpha), allow_degenerate);
}

bool AmplitudePair::degenerate() const { return std::abs(alpha_ - beta_) < kDegeneracyTolerance; }

double unitarity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw InvalidArgument("unitarity of a non-square matrix");
  return max_abs_diff(m.adjoint() * m, ComplexMatrix::identity(m.rows()));
}

UnitaryOperator::UnitaryOperator(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.is_square()) throw InvalidArgument("unitary must be square");
  if (unitarity_defect(m_) > kUnitarityTolerance) throw InvalidArgument("matrix is not unitary");
}

BlockCode block_code(unsigned bits) {
  if (bits > 3) throw InvalidArgument("block code must be a two-bit value, got " + std::to_string(bits));
  return static_cast<BlockCode>(bits);
}

ComplexMatrix block_rotation(BlockCode code, const AmplitudePair& amps) {
  const double a = amps.alpha();
  const double b = amps.beta();
  switch (code) {
    case BlockCode::k00: return {{a, b}, {-b, a}};
    case BlockCode::k01: return {{b, a}, {a, -b}};
    case BlockCode::k10: return {{b, a}, {-a, b}};
    case BlockCode::k11: return {{a, b}, {b, -a}};
  }
  throw InvalidArgument("invalid block code");
}

UnitaryOperator block_unitary(BlockCode code, const AmplitudePair& amps) {
  const ComplexMatrix rotation = kron(block_rotation(code, amps), gates::I());
  switch (code) {
    case BlockCode::k00: return UnitaryOperator(rotation);
    case BlockCode::k01: return UnitaryOperator(kron(gates::X(), gates::X()) * rotation);
    case BlockCode::k10: return UnitaryOperator(kron(gates::X(), gates::I()) * rotation);
    case BlockCode::k11: return UnitaryOperator(kron(block_rotation(code, amps), gates::X()));
  }
  throw InvalidArgument("invalid block code");
}

StateVector block_target_qubit(BlockCode code, const AmplitudePair& amps) {
  const double a = amps.alpha();
  const double b = amps.beta();
  switch (code) {
    case BlockCode::k00: return StateVector({a, b});
    case BlockCode::k01: return StateVector({a, -b});
    case BlockCode::k10: return StateVector({b, a});
    case BlockCode::k11: return StateVector({b, -a});
  }
  throw InvalidArgument("invalid block code");
}

StateVector block_target_state(BlockCode code, const AmplitudePair& amps) {
  return kron(block_target_qubit(code, amps), states::ket("0"));
}

UnitaryOperator swap_registers(std::size_t qubits_per_side) {
  if (qubits_per_side == 0) throw InvalidArgument("swap of empty registers");
  const std::size_t side = std::size_t{1} << qubits_per_side;
  const std::size_t dim = side * side;
  ComplexMatrix m(dim, dim);
  // |a>|b> -> |b>|a>
  for (std::size_t a = 0; a < side; ++a)
    for (std::size_t b = 0; b < side; ++b) m(b * side + a, a * side + b) = 1.0;
  return UnitaryOperator(std::move(m));
}

UnitaryOperator bhw_interaction(const AmplitudePair& amps) {
  ComplexMatrix controlled(16, 16);
  for (unsigned xy = 0; xy < 4; ++xy) {
    ComplexMatrix selector(4, 4);
    selector(xy, xy) = 1.0;
    controlled += kron(selector, block_unitary(block_code(xy), amps).matrix());
  }
  return UnitaryOperator(controlled) * swap_registers(2);
}

RegisterLayout bhw_layout() { return RegisterLayout::cr_then_ctc({"CR1", "CR2"}, {"CTC1", "CTC2"}); }

std::array<ComplexMatrix, 4> bell_projectors() {
  std::array<ComplexMatrix, 4> out;
  for (std::size_t k = 0; k < kAllBellLabels.size(); ++k) {
    const auto v = states::bell(kAllBellLabels[k]).as_column();
    out[k] = kron(v * v.adjoint(), gates::I());
  }
  return out;
}

ComplexMatrix embed_single(const ComplexMatrix& op, std::size_t position, std::size_t num_qubits) {
  if (op.rows() != 2 || op.cols() != 2) throw InvalidArgument("embed_single expects a 2x2 operator");
  if (position >= num_qubits) throw InvalidArgument("qubit position out of range");
  ComplexMatrix m = ComplexMatrix::identity(1);
  for (std::size_t q = 0; q < num_qubits; ++q) m = kron(m, q == position ? op : gates::I());
  return m;
}

}  // namespace ctcsim
