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

#include "ctcsim/kernels.hpp"

#include <gtest/gtest.h>

#include <random>

#include "ctcsim/circuits.hpp"
#include "oracles.hpp"

using namespace ctcsim;

namespace {

ComplexMatrix eigen_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  return oracle::from_eigen(oracle::to_eigen(a) * oracle::to_eigen(b));
}

}  // namespace

TEST(Kernels, SerialMatmulMatchesEigen) {
  std::mt19937_64 rng(21);
  for (std::size_t n : {1u, 3u, 16u, 70u}) {
    const auto a = oracle::random_matrix(n, n + 1, rng);
    const auto b = oracle::random_matrix(n + 1, n, rng);
    EXPECT_LT(max_abs_diff(kernels::serial::matmul(a, b), eigen_product(a, b)), 1e-12) << n;
  }
}

TEST(Kernels, ParallelMatmulIsBitIdenticalToSerial) {
  std::mt19937_64 rng(22);
  for (std::size_t n : {2u, 63u, 64u, 65u, 130u}) {
    const auto a = oracle::random_matrix(n, n, rng);
    const auto b = oracle::random_matrix(n, n, rng);
    EXPECT_EQ(kernels::parallel::matmul(a, b), kernels::serial::matmul(a, b)) << n;
  }
}

TEST(Kernels, ParallelKronIsBitIdenticalToSerial) {
  std::mt19937_64 rng(23);
  const auto a = oracle::random_matrix(16, 8, rng);
  const auto b = oracle::random_matrix(8, 16, rng);
  EXPECT_EQ(kernels::parallel::kron(a, b), kernels::serial::kron(a, b));
  EXPECT_EQ(kron(a, b), kernels::serial::kron(a, b));
}

TEST(Kernels, ParallelConjugateIsBitIdenticalToSerial) {
  std::mt19937_64 rng(24);
  const auto u = oracle::haar_unitary(128, rng);
  const auto rho = oracle::random_density(128, rng);
  EXPECT_EQ(kernels::parallel::conjugate(u, rho), kernels::serial::conjugate(u, rho));
}

TEST(Kernels, ConjugateMatchesEigen) {
  std::mt19937_64 rng(25);
  const auto u = oracle::haar_unitary(8, rng);
  const auto rho = oracle::random_density(8, rng);
  const auto ref = oracle::from_eigen(oracle::to_eigen(u) * oracle::to_eigen(rho) * oracle::to_eigen(u).adjoint());
  EXPECT_LT(max_abs_diff(kernels::serial::conjugate(u, rho), ref), 1e-13);
}

TEST(Kernels, SuperoperatorOfConjugationIsKronOfUAndConjU) {
  std::mt19937_64 rng(26);
  const auto u = oracle::haar_unitary(4, rng);
  const kernels::MatrixMap map = [&](const ComplexMatrix& s) { return kernels::serial::conjugate(u, s); };
  const auto serial = kernels::serial::superoperator(map, 4);
  ComplexMatrix conj_u(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) conj_u(i, j) = std::conj(u(i, j));
  EXPECT_LT(max_abs_diff(serial, kron(u, conj_u)), 1e-14);
  EXPECT_EQ(kernels::parallel::superoperator(map, 4), serial);
}

TEST(Kernels, ParallelSuperoperatorIsBitIdenticalOnLargeInput) {
  std::mt19937_64 rng(27);
  const auto u = oracle::haar_unitary(16, rng);
  const kernels::MatrixMap map = [&](const ComplexMatrix& s) { return kernels::serial::conjugate(u, s); };
  EXPECT_EQ(kernels::parallel::superoperator(map, 16), kernels::serial::superoperator(map, 16));
}

TEST(Kernels, DimensionMismatchThrows) {
  EXPECT_THROW(kernels::serial::matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), InvalidArgument);
  EXPECT_THROW(kernels::parallel::matmul(ComplexMatrix(2, 3), ComplexMatrix(2, 3)), InvalidArgument);
}

TEST(Kernels, ThreadCountIsPositive) { EXPECT_GE(kernels::max_threads(), 1); }
