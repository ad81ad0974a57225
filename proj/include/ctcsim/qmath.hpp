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
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ctcsim {

using Complex = std::complex<double>;

/// Raised when an argument violates a documented precondition (shape,
/// normalization, unknown label, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dense row-major complex matrix. Entries are always finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  std::span<const Complex> entries() const { return data_; }
  std::span<Complex> entries() { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;

  /// Largest elementwise modulus.
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// max |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |m - m^dagger|.
double hermiticity_defect(const ComplexMatrix& m);

bool is_power_of_two(std::size_t n);
std::size_t qubit_count(std::size_t dim);

/// Normalized pure state on a power-of-two dimensional space.
class StateVector {
 public:
  static constexpr double kNormTolerance = 1e-12;

  explicit StateVector(std::vector<Complex> amplitudes);

  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  /// Column vector view as a dim x 1 matrix.
  ComplexMatrix as_column() const;

 private:
  std::vector<Complex> amps_;
};

/// <a|b>.
Complex inner(const StateVector& a, const StateVector& b);

/// |<a|b>|, equal to 1 iff the states agree up to a global phase.
double overlap(const StateVector& a, const StateVector& b);

StateVector kron(const StateVector& a, const StateVector& b);

/// U|psi>. U must be unitary up to numerical error; the result is
/// renormalization-free and validated.
StateVector apply(const ComplexMatrix& u, const StateVector& psi);

/// Hermitian, PSD, trace-one operator on a power-of-two dimensional space.
class DensityOperator {
 public:
  static constexpr double kHermitianTolerance = 1e-12;
  static constexpr double kTraceTolerance = 1e-12;
  static constexpr double kEigenvalueFloor = -1e-10;

  explicit DensityOperator(ComplexMatrix m);

  static DensityOperator pure(const StateVector& psi);
  static DensityOperator maximally_mixed(std::size_t dim);

  /// Hermitizes `m` ((m + m^dagger)/2) before validating. For outputs of
  /// numerical pipelines that are Hermitian only up to rounding.
  static DensityOperator from_numerical(const ComplexMatrix& m);

  std::size_t dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  double purity() const;

 private:
  ComplexMatrix m_;
};

DensityOperator kron(const DensityOperator& a, const DensityOperator& b);

enum class Subsystem { CR, CTC };

/// Ordered qubit labels partitioned into chronology-respecting and CTC parts.
/// Label position 0 is the most significant bit of a basis index.
class RegisterLayout {
 public:
  RegisterLayout(std::vector<std::string> labels, std::map<std::string, Subsystem> partition);

  /// All labels in the CR part (registers with no CTC).
  static RegisterLayout chronology_respecting(std::vector<std::string> labels);

  /// CR labels first, then CTC labels.
  static RegisterLayout cr_then_ctc(std::vector<std::string> cr, std::vector<std::string> ctc);

  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return std::size_t{1} << labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::size_t position(std::string_view label) const;
  Subsystem subsystem(std::string_view label) const;
  std::vector<std::string> labels_in(Subsystem s) const;

  /// True if every CR label precedes every CTC label.
  bool cr_precedes_ctc() const;

 private:
  std::vector<std::string> labels_;
  std::map<std::string, Subsystem, std::less<>> partition_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Partial trace of an arbitrary square matrix on `num_qubits` qubits,
/// keeping the qubits at `keep` (positions, most significant first). Kept
/// qubits appear in ascending position order in the result.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t num_qubits,
                            std::span<const std::size_t> keep);

DensityOperator partial_trace(const DensityOperator& rho, const RegisterLayout& layout,
                              std::span<const std::string> keep);
DensityOperator partial_trace(const DensityOperator& rho, const RegisterLayout& layout,
                              Subsystem keep);

/// Eigenvalues of a Hermitian matrix, descending. Throws InvalidArgument if
/// `m` is not Hermitian within `hermitian_tolerance`.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m,
                                          double hermitian_tolerance = 1e-10);

/// Singular values, descending (one-sided Jacobi).
std::vector<double> singular_values(const ComplexMatrix& m);

/// Sum of singular values. Square input only.
double trace_norm(const ComplexMatrix& m);

/// ||a - b||_1.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellLabel, 4> kAllBellLabels = {
    BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus};

std::string_view to_string(BellLabel label);
BellLabel parse_bell_label(std::string_view text);

namespace gates {
const ComplexMatrix& I();
const ComplexMatrix& X();
const ComplexMatrix& Y();
const ComplexMatrix& Z();
const ComplexMatrix& H();
/// Two-qubit SWAP.
const ComplexMatrix& SWAP();
}  // namespace gates

namespace states {
/// Computational basis ket from a bit string, e.g. ket("10") = |10>.
StateVector ket(std::string_view bits);
StateVector basis(std::size_t num_qubits, std::size_t index);
StateVector bell(BellLabel label);
}  // namespace states

}  // namespace ctcsim
