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

#include "ctcsim/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include "ctcsim/kernels.hpp"

namespace ctcsim {

namespace {

void require_finite(std::span<const Complex> entries) {
  for (const auto& z : entries) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidArgument("matrix entry is not finite");
    }
  }
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument("matrix shapes differ");
  }
}

// Bit index (LSB = 0) of qubit `position` in an n-qubit register.
std::size_t bit_of(std::size_t position, std::size_t num_qubits) {
  return num_qubits - 1 - position;
}

// Spreads the low bits of `value` onto the bit indices in `bits`
// (bits[0] receives the most significant bit of value).
std::size_t scatter(std::size_t value, std::span<const std::size_t> bits) {
  std::size_t out = 0;
  const std::size_t n = bits.size();
  for (std::size_t k = 0; k < n; ++k) {
    if ((value >> (n - 1 - k)) & 1U) out |= std::size_t{1} << bits[k];
  }
  return out;
}

// Cyclic Jacobi on a dense real symmetric matrix (row-major, n x n).
// Returns the eigenvalues in the order they land on the diagonal.
std::vector<double> symmetric_jacobi(std::vector<double> a, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  double fro = 0.0;
  for (double v : a) fro += v * v;
  const double floor = std::numeric_limits<double>::epsilon() * 1e-2 * std::sqrt(fro);

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(at(p, q)));
    if (off <= floor) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) <= floor) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        at(p, p) -= t * apq;
        at(q, q) += t * apq;
        at(p, q) = at(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double g = at(r, p);
          const double h = at(r, q);
          at(r, p) = at(p, r) = c * g - s * h;
          at(r, q) = at(q, r) = s * g + c * h;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = at(i, i);
  return eig;
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw InvalidArgument("entry count does not match rows x cols");
  }
  require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw InvalidArgument("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw InvalidArgument("trace of a non-square matrix");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return kernels::parallel::matmul(a, b);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  double m = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k) {
    m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  }
  return m;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw InvalidArgument("Hermiticity of a non-square matrix");
  double d = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
  return d;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t qubit_count(std::size_t dim) {
  if (!is_power_of_two(dim)) throw InvalidArgument("dimension is not a power of two");
  std::size_t q = 0;
  while ((std::size_t{1} << q) < dim) ++q;
  return q;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return kernels::parallel::kron(a, b);
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
  if (!is_power_of_two(amps_.size())) throw InvalidArgument("state dimension is not a power of two");
  require_finite(amps_);
  double norm2 = 0.0;
  for (const auto& z : amps_) norm2 += std::norm(z);
  if (std::abs(std::sqrt(norm2) - 1.0) > kNormTolerance) {
    throw InvalidArgument("state vector is not normalized");
  }
}

ComplexMatrix StateVector::as_column() const {
  return ComplexMatrix(amps_.size(), 1, amps_);
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("inner product of states with different dimensions");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double overlap(const StateVector& a, const StateVector& b) { return std::abs(inner(a, b)); }

StateVector kron(const StateVector& a, const StateVector& b) {
  std::vector<Complex> out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  return StateVector(std::move(out));
}

StateVector apply(const ComplexMatrix& u, const StateVector& psi) {
  if (!u.is_square() || u.cols() != psi.dim()) throw InvalidArgument("operator does not match state dimension");
  std::vector<Complex> out(psi.dim());
  for (std::size_t i = 0; i < u.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < u.cols(); ++j) s += u(i, j) * psi[j];
    out[i] = s;
  }
  return StateVector(std::move(out));
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.is_square() || !is_power_of_two(m_.rows())) {
    throw InvalidArgument("density operator must be square with power-of-two dimension");
  }
  if (hermiticity_defect(m_) > kHermitianTolerance) throw InvalidArgument("density operator is not Hermitian");
  if (std::abs(m_.trace() - 1.0) > kTraceTolerance) throw InvalidArgument("density operator trace is not 1");
  const auto eig = hermitian_eigenvalues(m_);
  if (eig.back() < kEigenvalueFloor) throw InvalidArgument("density operator is not positive semidefinite");
}

DensityOperator DensityOperator::pure(const StateVector& psi) {
  const auto col = psi.as_column();
  return from_numerical(col * col.adjoint());
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
  return DensityOperator(ComplexMatrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
}

DensityOperator DensityOperator::from_numerical(const ComplexMatrix& m) {
  if (!m.is_square()) throw InvalidArgument("density operator must be square");
  return DensityOperator((m + m.adjoint()) * Complex(0.5));
}

double DensityOperator::purity() const { return (m_ * m_).trace().real(); }

DensityOperator kron(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator::from_numerical(kron(a.matrix(), b.matrix()));
}

// ---------------------------------------------------------------------------
// RegisterLayout

RegisterLayout::RegisterLayout(std::vector<std::string> labels,
                               std::map<std::string, Subsystem> partition)
    : labels_(std::move(labels)) {
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw InvalidArgument("duplicate qubit label: " + l);
    auto it = partition.find(l);
    if (it == partition.end()) throw InvalidArgument("partition does not cover label: " + l);
    partition_.emplace(l, it->second);
  }
  if (partition.size() != labels_.size()) throw InvalidArgument("partition names labels outside the register");
}

RegisterLayout RegisterLayout::chronology_respecting(std::vector<std::string> labels) {
  std::map<std::string, Subsystem> part;
  for (const auto& l : labels) part[l] = Subsystem::CR;
  return RegisterLayout(std::move(labels), std::move(part));
}

RegisterLayout RegisterLayout::cr_then_ctc(std::vector<std::string> cr, std::vector<std::string> ctc) {
  std::map<std::string, Subsystem> part;
  std::vector<std::string> labels;
  for (auto& l : cr) {
    part[l] = Subsystem::CR;
    labels.push_back(std::move(l));
  }
  for (auto& l : ctc) {
    part[l] = Subsystem::CTC;
    labels.push_back(std::move(l));
  }
  return RegisterLayout(std::move(labels), std::move(part));
}

std::size_t RegisterLayout::position(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw InvalidArgument("unknown qubit label: " + std::string(label));
  return static_cast<std::size_t>(it - labels_.begin());
}

Subsystem RegisterLayout::subsystem(std::string_view label) const {
  auto it = partition_.find(label);
  if (it == partition_.end()) throw InvalidArgument("unknown qubit label: " + std::string(label));
  return it->second;
}

std::vector<std::string> RegisterLayout::labels_in(Subsystem s) const {
  std::vector<std::string> out;
  for (const auto& l : labels_)
    if (partition_.at(l) == s) out.push_back(l);
  return out;
}

bool RegisterLayout::cr_precedes_ctc() const {
  bool in_ctc = false;
  for (const auto& l : labels_) {
    if (partition_.at(l) == Subsystem::CTC) {
      in_ctc = true;
    } else if (in_ctc) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Partial trace

ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t num_qubits,
                            std::span<const std::size_t> keep) {
  if (!m.is_square() || m.rows() != (std::size_t{1} << num_qubits)) {
    throw InvalidArgument("matrix dimension does not match qubit count");
  }
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw InvalidArgument("qubit kept twice in partial trace");
  }
  std::vector<std::size_t> kept_bits, traced_bits;
  for (std::size_t p = 0; p < num_qubits; ++p) {
    const bool k = std::binary_search(kept.begin(), kept.end(), p);
    (k ? kept_bits : traced_bits).push_back(bit_of(p, num_qubits));
  }
  if (kept_bits.size() != kept.size()) throw InvalidArgument("kept qubit position out of range");

  const std::size_t out_dim = std::size_t{1} << kept_bits.size();
  const std::size_t env_dim = std::size_t{1} << traced_bits.size();
  std::vector<std::size_t> env_index(env_dim);
  for (std::size_t t = 0; t < env_dim; ++t) env_index[t] = scatter(t, traced_bits);

  ComplexMatrix out(out_dim, out_dim);
  for (std::size_t r = 0; r < out_dim; ++r) {
    const std::size_t ri = scatter(r, kept_bits);
    for (std::size_t c = 0; c < out_dim; ++c) {
      const std::size_t ci = scatter(c, kept_bits);
      Complex s = 0.0;
      for (std::size_t t = 0; t < env_dim; ++t) s += m(ri | env_index[t], ci | env_index[t]);
      out(r, c) = s;
    }
  }
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, const RegisterLayout& layout,
                              std::span<const std::string> keep) {
  if (rho.dim() != layout.dim()) throw InvalidArgument("layout does not match operator dimension");
  std::vector<std::size_t> positions;
  positions.reserve(keep.size());
  for (const auto& l : keep) positions.push_back(layout.position(l));
  return DensityOperator::from_numerical(partial_trace(rho.matrix(), layout.size(), positions));
}

DensityOperator partial_trace(const DensityOperator& rho, const RegisterLayout& layout,
                              Subsystem keep) {
  const auto labels = layout.labels_in(keep);
  return partial_trace(rho, layout, std::span<const std::string>(labels));
}

// ---------------------------------------------------------------------------
// Spectra

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m, double hermitian_tolerance) {
  if (!m.is_square()) throw InvalidArgument("eigenvalues of a non-square matrix");
  if (hermiticity_defect(m) > hermitian_tolerance) throw InvalidArgument("matrix is not Hermitian");
  const std::size_t n = m.rows();
  if (n == 0) return {};

  // H = A + iB  ->  [[A, -B], [B, A]] is real symmetric with every
  // eigenvalue of H appearing twice.
  const std::size_t n2 = 2 * n;
  std::vector<double> emb(n2 * n2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // Symmetrize within the tolerance window.
      const Complex h = 0.5 * (m(i, j) + std::conj(m(j, i)));
      emb[i * n2 + j] = h.real();
      emb[(i + n) * n2 + (j + n)] = h.real();
      emb[i * n2 + (j + n)] = -h.imag();
      emb[(i + n) * n2 + j] = h.imag();
    }
  }
  auto doubled = symmetric_jacobi(std::move(emb), n2);
  std::sort(doubled.begin(), doubled.end(), std::greater<>());
  std::vector<double> eig(n);
  for (std::size_t k = 0; k < n; ++k) eig[k] = 0.5 * (doubled[2 * k] + doubled[2 * k + 1]);
  return eig;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  // One-sided Jacobi orthogonalizes the columns; work on the adjoint if
  // the matrix is wide.
  const ComplexMatrix& src = m;
  ComplexMatrix tmp;
  const ComplexMatrix* a = &src;
  if (m.rows() < m.cols()) {
    tmp = m.adjoint();
    a = &tmp;
  }
  const std::size_t rows = a->rows();
  const std::size_t cols = a->cols();
  std::vector<std::vector<Complex>> col(cols, std::vector<Complex>(rows));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) col[j][i] = (*a)(i, j);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < cols; ++p) {
      for (std::size_t q = p + 1; q < cols; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
          alpha += std::norm(col[p][i]);
          beta += std::norm(col[q][i]);
          gamma += std::conj(col[p][i]) * col[q][i];
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        // Rephase column q so that the cross term is real, then rotate.
        const Complex phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < rows; ++i) {
          const Complex xp = col[p][i];
          const Complex xq = col[q][i] * phase;
          col[p][i] = c * xp - s * xq;
          col[q][i] = s * xp + c * xq;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(cols);
  for (std::size_t j = 0; j < cols; ++j) {
    double n2 = 0.0;
    for (const auto& z : col[j]) n2 += std::norm(z);
    sv[j] = std::sqrt(n2);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

double trace_norm(const ComplexMatrix& m) {
  if (!m.is_square()) throw InvalidArgument("trace norm of a non-square matrix");
  const auto sv = singular_values(m);
  return std::accumulate(sv.begin(), sv.end(), 0.0);
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) { return trace_norm(a - b); }

// ---------------------------------------------------------------------------
// Constants

std::string_view to_string(BellLabel label) {
  switch (label) {
    case BellLabel::PhiPlus: return "Phi+";
    case BellLabel::PhiMinus: return "Phi-";
    case BellLabel::PsiPlus: return "Psi+";
    case BellLabel::PsiMinus: return "Psi-";
  }
  return "?";
}

BellLabel parse_bell_label(std::string_view text) {
  std::string t;
  for (char ch : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (t == "phi+" || t == "phiplus") return BellLabel::PhiPlus;
  if (t == "phi-" || t == "phiminus") return BellLabel::PhiMinus;
  if (t == "psi+" || t == "psiplus") return BellLabel::PsiPlus;
  if (t == "psi-" || t == "psiminus") return BellLabel::PsiMinus;
  throw InvalidArgument("unknown Bell label: " + std::string(text));
}

namespace gates {

const ComplexMatrix& I() {
  static const ComplexMatrix m{{1, 0}, {0, 1}};
  return m;
}
const ComplexMatrix& X() {
  static const ComplexMatrix m{{0, 1}, {1, 0}};
  return m;
}
const ComplexMatrix& Y() {
  static const ComplexMatrix m{{0, Complex(0, -1)}, {Complex(0, 1), 0}};
  return m;
}
const ComplexMatrix& Z() {
  static const ComplexMatrix m{{1, 0}, {0, -1}};
  return m;
}
const ComplexMatrix& H() {
  static const double r = 1.0 / std::sqrt(2.0);
  static const ComplexMatrix m{{r, r}, {r, -r}};
  return m;
}
const ComplexMatrix& SWAP() {
  static const ComplexMatrix m{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
  return m;
}

}  // namespace gates

namespace states {

StateVector ket(std::string_view bits) {
  if (bits.empty()) throw InvalidArgument("empty bit string");
  std::size_t index = 0;
  for (char b : bits) {
    if (b != '0' && b != '1') throw InvalidArgument("bit string must contain only 0 and 1");
    index = (index << 1) | static_cast<std::size_t>(b - '0');
  }
  return basis(bits.size(), index);
}

StateVector basis(std::size_t num_qubits, std::size_t index) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (index >= dim) throw InvalidArgument("basis index out of range");
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return StateVector(std::move(amps));
}

StateVector bell(BellLabel label) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (label) {
    case BellLabel::PhiPlus: return StateVector({r, 0, 0, r});
    case BellLabel::PhiMinus: return StateVector({r, 0, 0, -r});
    case BellLabel::PsiPlus: return StateVector({0, r, r, 0});
    case BellLabel::PsiMinus: return StateVector({0, r, -r, 0});
  }
  throw InvalidArgument("unknown Bell label");
}

}  // namespace states

}  // namespace ctcsim
