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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "oracles.hpp"

using namespace ctcsim;

namespace {

const double kHalf = 0.5;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ComplexMatrix outer(const StateVector& v) {
  const auto c = v.as_column();
  return c * c.adjoint();
}

}  // namespace

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(kron(gates::I(), gates::I()), ComplexMatrix::identity(4));
}

TEST(Kron, BitFlipOnBothQubits) {
  const auto out = apply(kron(gates::X(), gates::X()), states::ket("00"));
  EXPECT_DOUBLE_EQ(overlap(out, states::ket("11")), 1.0);
  EXPECT_EQ(out[3], Complex(1.0));
}

TEST(Kron, DimensionLaw) {
  std::mt19937_64 rng(1);
  const auto k = kron(oracle::random_matrix(2, 2, rng), oracle::random_matrix(4, 4, rng));
  EXPECT_EQ(k.rows(), 8u);
  EXPECT_EQ(k.cols(), 8u);
  const auto r = kron(oracle::random_matrix(2, 3, rng), oracle::random_matrix(5, 1, rng));
  EXPECT_EQ(r.rows(), 10u);
  EXPECT_EQ(r.cols(), 3u);
}

TEST(Kron, IndexLaw) {
  std::mt19937_64 rng(2);
  const auto a = oracle::random_matrix(3, 2, rng);
  const auto b = oracle::random_matrix(2, 4, rng);
  const auto k = kron(a, b);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t q = 0; q < 4; ++q) EXPECT_EQ(k(i * 2 + p, j * 4 + q), a(i, j) * b(p, q));
}

TEST(Kron, AssociativityProperty) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = oracle::random_matrix(2, 2, rng);
    const auto b = oracle::random_matrix(2, 3, rng);
    const auto c = oracle::random_matrix(3, 2, rng);
    EXPECT_LT(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-14);
  }
}

TEST(PartialTrace, ProductStateFactorizes) {
  std::mt19937_64 rng(4);
  const auto ra = oracle::random_density(2, rng);
  const auto rb = oracle::random_density(4, rng);
  const DensityOperator joint(kron(ra, rb));
  const auto layout = RegisterLayout::chronology_respecting({"A", "B1", "B2"});
  const std::vector<std::string> keep{"A"};
  EXPECT_LT(max_abs_diff(partial_trace(joint, layout, keep).matrix(), ra), 1e-14);
  const std::vector<std::string> keep_b{"B1", "B2"};
  EXPECT_LT(max_abs_diff(partial_trace(joint, layout, keep_b).matrix(), rb), 1e-14);
}

TEST(PartialTrace, BellPairReducesToMaximallyMixed) {
  // <0|_B Phi+ |0>_B = |0><0|/2 and <1|_B Phi+ |1>_B = |1><1|/2.
  const auto phi = DensityOperator::pure(states::bell(BellLabel::PhiPlus));
  const auto layout = RegisterLayout::chronology_respecting({"A", "B"});
  const std::vector<std::string> keep{"A"};
  const auto reduced = partial_trace(phi, layout, keep);
  EXPECT_LT(max_abs_diff(reduced.matrix(), ComplexMatrix::identity(2) * Complex(kHalf)), 1e-15);
}

TEST(PartialTrace, TracingEverythingLeavesOne) {
  std::mt19937_64 rng(5);
  const DensityOperator rho(oracle::random_density(8, rng));
  const auto out = partial_trace(rho.matrix(), 3, std::vector<std::size_t>{});
  ASSERT_EQ(out.rows(), 1u);
  EXPECT_NEAR(out(0, 0).real(), 1.0, 1e-14);
  EXPECT_NEAR(out(0, 0).imag(), 0.0, 1e-14);
}

TEST(PartialTrace, KeepsMiddleQubit) {
  // |0>|1>|0> -> qubit 1 is |1>.
  const auto rho = DensityOperator::pure(states::ket("010"));
  const auto out = partial_trace(rho.matrix(), 3, std::vector<std::size_t>{1});
  EXPECT_EQ(out, outer(states::ket("1")));
}

TEST(PartialTrace, UnknownLabelThrows) {
  const auto rho = DensityOperator::maximally_mixed(4);
  const auto layout = RegisterLayout::chronology_respecting({"A", "B"});
  const std::vector<std::string> keep{"C"};
  EXPECT_THROW(partial_trace(rho, layout, keep), InvalidArgument);
}

TEST(PartialTrace, LayoutDimensionMismatchThrows) {
  const auto rho = DensityOperator::maximally_mixed(8);
  const auto layout = RegisterLayout::chronology_respecting({"A", "B"});
  EXPECT_THROW(partial_trace(rho, layout, Subsystem::CR), InvalidArgument);
}

TEST(PartialTrace, LinearityProperty) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const std::vector<std::size_t> keep{0, 2};
  for (int trial = 0; trial < 100; ++trial) {
    const auto r1 = oracle::random_density(8, rng);
    const auto r2 = oracle::random_density(8, rng);
    const double a = u(rng), b = u(rng);
    const auto lhs = partial_trace(r1 * Complex(a) + r2 * Complex(b), 3, keep);
    const auto rhs = partial_trace(r1, 3, keep) * Complex(a) + partial_trace(r2, 3, keep) * Complex(b);
    EXPECT_LT(max_abs_diff(lhs, rhs), 1e-12);
  }
}

TEST(HermitianEigenvalues, Identity) {
  const auto e = hermitian_eigenvalues(ComplexMatrix::identity(4));
  ASSERT_EQ(e.size(), 4u);
  for (double v : e) EXPECT_NEAR(v, 1.0, 1e-15);
}

TEST(HermitianEigenvalues, PauliZ) {
  const auto e = hermitian_eigenvalues(gates::Z());
  ASSERT_EQ(e.size(), 2u);
  EXPECT_NEAR(e[0], 1.0, 1e-15);
  EXPECT_NEAR(e[1], -1.0, 1e-15);
}

TEST(HermitianEigenvalues, PartialTransposeOfBellPair) {
  // Phi+^{T_A} = SWAP / 2, whose eigenvalues are {1/2, 1/2, 1/2, -1/2}.
  const ComplexMatrix pt = gates::SWAP() * Complex(kHalf);
  const auto e = hermitian_eigenvalues(pt);
  const std::vector<double> expected{0.5, 0.5, 0.5, -0.5};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(e[i], expected[i], 1e-14);
}

TEST(HermitianEigenvalues, ComplexEntries) {
  // Y has eigenvalues +-1 and only imaginary entries.
  const auto e = hermitian_eigenvalues(gates::Y());
  EXPECT_NEAR(e[0], 1.0, 1e-14);
  EXPECT_NEAR(e[1], -1.0, 1e-14);
}

TEST(HermitianEigenvalues, NonHermitianThrows) {
  const ComplexMatrix m{{1, 2}, {0, 1}};
  EXPECT_THROW(hermitian_eigenvalues(m), InvalidArgument);
  EXPECT_THROW(hermitian_eigenvalues(ComplexMatrix(2, 3)), InvalidArgument);
}

TEST(HermitianEigenvalues, MatchesEigenOracle) {
  std::mt19937_64 rng(7);
  for (std::size_t dim : {1u, 2u, 3u, 5u, 8u, 16u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto h = oracle::random_hermitian(dim, rng);
      const auto mine = hermitian_eigenvalues(h);
      const auto ref = oracle::eigenvalues_desc(h);
      ASSERT_EQ(mine.size(), ref.size());
      for (std::size_t i = 0; i < dim; ++i) EXPECT_NEAR(mine[i], ref[i], 1e-10) << "dim " << dim;
      const double sum = std::accumulate(mine.begin(), mine.end(), 0.0);
      EXPECT_NEAR(sum, h.trace().real(), 1e-10);
    }
  }
}

TEST(HermitianEigenvalues, DensityOperatorSpectrumProperty) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = trial % 2 ? oracle::random_density(16, rng) : oracle::random_pure(16, rng);
    const auto e = hermitian_eigenvalues(rho);
    EXPECT_NEAR(std::accumulate(e.begin(), e.end(), 0.0), 1.0, 1e-10);
    EXPECT_GE(e.back(), -1e-10);
  }
}

TEST(SingularValues, MatchesEigenOracle) {
  std::mt19937_64 rng(9);
  for (auto [r, c] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 1}, {4, 4}, {16, 16}, {6, 3}, {3, 7}}) {
    const auto m = oracle::random_matrix(r, c, rng);
    const auto mine = singular_values(m);
    const auto ref = oracle::singular_values_desc(m);
    ASSERT_EQ(mine.size(), ref.size());
    for (std::size_t i = 0; i < mine.size(); ++i) EXPECT_NEAR(mine[i], ref[i], 1e-12);
  }
}

TEST(SingularValues, RankDeficientHasTinyTail) {
  std::mt19937_64 rng(10);
  const auto a = oracle::random_matrix(8, 2, rng);
  const auto b = oracle::random_matrix(2, 8, rng);
  const auto sv = singular_values(a * b);
  for (std::size_t i = 2; i < sv.size(); ++i) EXPECT_LT(sv[i], 1e-13);
}

TEST(TraceNorm, ZeroMatrix) { EXPECT_EQ(trace_norm(ComplexMatrix(3, 3)), 0.0); }

TEST(TraceNorm, UnitaryHasNormEqualToDimension) {
  std::mt19937_64 rng(11);
  for (std::size_t d : {2u, 4u, 8u, 16u}) {
    EXPECT_NEAR(trace_norm(oracle::haar_unitary(d, rng)), static_cast<double>(d), 1e-12);
  }
}

TEST(TraceNorm, HermitianWithNegativeEigenvalue) {
  EXPECT_NEAR(trace_norm(gates::SWAP() * Complex(kHalf)), 2.0, 1e-14);
}

TEST(TraceNorm, NonSquareThrows) { EXPECT_THROW(trace_norm(ComplexMatrix(2, 3)), InvalidArgument); }

TEST(TraceNorm, DominatesTraceProperty) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = oracle::random_matrix(4, 4, rng);
    EXPECT_GE(trace_norm(m) + 1e-12, std::abs(m.trace()));
    EXPECT_NEAR(trace_norm(m), oracle::trace_norm(m), 1e-11);
  }
}

TEST(Constants, BellAmplitudes) {
  const auto phi = states::bell(BellLabel::PhiPlus);
  EXPECT_EQ(phi[0], Complex(kInvSqrt2));
  EXPECT_EQ(phi[1], Complex(0.0));
  EXPECT_EQ(phi[2], Complex(0.0));
  EXPECT_EQ(phi[3], Complex(kInvSqrt2));
  const auto psi = states::bell(BellLabel::PsiMinus);
  EXPECT_EQ(psi[0], Complex(0.0));
  EXPECT_EQ(psi[1], Complex(kInvSqrt2));
  EXPECT_EQ(psi[2], Complex(-kInvSqrt2));
  EXPECT_EQ(psi[3], Complex(0.0));
}

TEST(Constants, SwapExchangesQubits) {
  EXPECT_DOUBLE_EQ(overlap(apply(gates::SWAP(), states::ket("01")), states::ket("10")), 1.0);
}

TEST(Constants, BellBasisIsOrthonormal) {
  for (BellLabel a : kAllBellLabels)
    for (BellLabel b : kAllBellLabels) {
      const double expected = a == b ? 1.0 : 0.0;
      EXPECT_NEAR(std::abs(inner(states::bell(a), states::bell(b))), expected, 1e-14);
    }
}

TEST(Constants, PauliAlgebra) {
  // XY = iZ, Y = iXZ.
  EXPECT_LT(max_abs_diff(gates::X() * gates::Y(), gates::Z() * Complex(0, 1)), 1e-15);
  EXPECT_LT(max_abs_diff(gates::Y(), gates::X() * gates::Z() * Complex(0, 1)), 1e-15);
  for (const auto* p : {&gates::X(), &gates::Y(), &gates::Z(), &gates::H()}) {
    EXPECT_LT(max_abs_diff((*p) * (*p), ComplexMatrix::identity(2)), 1e-15);
  }
}

TEST(Constants, KetParsing) {
  EXPECT_EQ(states::ket("10")[2], Complex(1.0));
  EXPECT_THROW(states::ket("12"), InvalidArgument);
  EXPECT_THROW(states::ket(""), InvalidArgument);
  EXPECT_EQ(parse_bell_label("Psi-"), BellLabel::PsiMinus);
  EXPECT_THROW(parse_bell_label("chi"), InvalidArgument);
}

TEST(Validation, ComplexMatrixRejectsNonFinite) {
  EXPECT_THROW(ComplexMatrix(1, 1, {Complex(std::numeric_limits<double>::quiet_NaN())}), InvalidArgument);
  EXPECT_THROW(ComplexMatrix(1, 1, {Complex(0, std::numeric_limits<double>::infinity())}), InvalidArgument);
  EXPECT_THROW(ComplexMatrix(2, 2, {1, 2, 3}), InvalidArgument);
}

TEST(Validation, StateVectorMustBeNormalized) {
  EXPECT_THROW(StateVector({1, 1}), InvalidArgument);
  EXPECT_THROW(StateVector({1, 0, 0}), InvalidArgument);
  EXPECT_NO_THROW(StateVector({Complex(0, 1), 0}));
}

TEST(Validation, DensityOperatorInvariants) {
  EXPECT_THROW(DensityOperator(ComplexMatrix{{0.5, 0.1}, {0.0, 0.5}}), InvalidArgument);  // not Hermitian
  EXPECT_THROW(DensityOperator(ComplexMatrix{{0.6, 0.0}, {0.0, 0.6}}), InvalidArgument);  // trace
  EXPECT_THROW(DensityOperator(ComplexMatrix{{1.5, 0.0}, {0.0, -0.5}}), InvalidArgument);  // not PSD
  EXPECT_THROW(DensityOperator(ComplexMatrix::identity(3) * Complex(1.0 / 3)), InvalidArgument);
  EXPECT_NO_THROW(DensityOperator::maximally_mixed(16));
  EXPECT_NEAR(DensityOperator::maximally_mixed(4).purity(), 0.25, 1e-15);
}

TEST(Validation, RegisterLayout) {
  EXPECT_THROW(RegisterLayout::chronology_respecting({"A", "A"}), InvalidArgument);
  EXPECT_THROW(RegisterLayout({"A", "B"}, {{"A", Subsystem::CR}}), InvalidArgument);
  EXPECT_THROW(RegisterLayout({"A"}, {{"A", Subsystem::CR}, {"Z", Subsystem::CTC}}), InvalidArgument);
  const auto l = RegisterLayout::cr_then_ctc({"c1"}, {"t1", "t2"});
  EXPECT_EQ(l.dim(), 8u);
  EXPECT_EQ(l.position("t1"), 1u);
  EXPECT_EQ(l.subsystem("t2"), Subsystem::CTC);
  EXPECT_TRUE(l.cr_precedes_ctc());
  EXPECT_FALSE(RegisterLayout({"t", "c"}, {{"t", Subsystem::CTC}, {"c", Subsystem::CR}}).cr_precedes_ctc());
}
