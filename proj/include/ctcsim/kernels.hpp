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

// Dense kernels in two flavours. `serial` is the reference implementation
// kept for testing; `parallel` distributes the outer loop with OpenMP once
// the problem is large enough to pay for a thread team. Both produce
// bit-identical results (same per-entry summation order).

#pragma once

#include <cstddef>
#include <functional>

#include "ctcsim/qmath.hpp"

namespace ctcsim::kernels {

/// Matrices with fewer rows than this stay on one thread in `parallel`.
inline constexpr std::size_t kParallelThreshold = 64;

/// A linear map on dim x dim matrices.
using MatrixMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

namespace serial {
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
/// U rho U^dagger.
ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& rho);
/// Row-major vectorized matrix of `map`: column (i*dim + j) holds
/// vec(map(|i><j|)) with vec(m)[r*dim + c] = m(r, c).
ComplexMatrix superoperator(const MatrixMap& map, std::size_t dim);
}  // namespace serial

namespace parallel {
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& rho);
/// `map` must be safe to call concurrently. Exceptions thrown by `map` end
/// the program; validate inputs before building the superoperator.
ComplexMatrix superoperator(const MatrixMap& map, std::size_t dim);
}  // namespace parallel

/// Number of OpenMP threads available (1 without OpenMP).
int max_threads();

}  // namespace ctcsim::kernels
