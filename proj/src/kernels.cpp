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

#include <cstdint>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ctcsim::kernels {

namespace {

void require_matmul_shapes(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidArgument("matmul: inner dimensions differ");
}

void require_conjugate_shapes(const ComplexMatrix& u, const ComplexMatrix& rho) {
  if (!u.is_square() || !rho.is_square() || u.cols() != rho.rows()) {
    throw InvalidArgument("conjugate: operator and state dimensions differ");
  }
}

// Row i of a*b. Shared by both flavours so that results are bit-identical.
inline void matmul_row(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c,
                       std::size_t i) {
  const std::size_t n = b.cols();
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const Complex aik = a(i, k);
    if (aik == Complex(0.0)) continue;
    for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
  }
}

inline void kron_row(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& c,
                     std::size_t i) {
  const std::size_t rb = b.rows();
  const std::size_t cb = b.cols();
  for (std::size_t k = 0; k < rb; ++k) {
    const std::size_t row = i * rb + k;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      for (std::size_t l = 0; l < cb; ++l) c(row, j * cb + l) = aij * b(k, l);
    }
  }
}

ComplexMatrix unit(std::size_t dim, std::size_t i, std::size_t j) {
  ComplexMatrix e(dim, dim);
  e(i, j) = 1.0;
  return e;
}

inline void store_column(ComplexMatrix& super, std::size_t column, const ComplexMatrix& image,
                         std::size_t dim) {
  if (image.rows() != dim || image.cols() != dim) {
    throw InvalidArgument("superoperator: map changed the matrix dimension");
  }
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) super(r * dim + c, column) = image(r, c);
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace serial {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_matmul_shapes(a, b);
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) matmul_row(a, b, c, i);
  return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) kron_row(a, b, c, i);
  return c;
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& rho) {
  require_conjugate_shapes(u, rho);
  return matmul(matmul(u, rho), u.adjoint());
}

ComplexMatrix superoperator(const MatrixMap& map, std::size_t dim) {
  const std::size_t d2 = dim * dim;
  ComplexMatrix super(d2, d2);
  for (std::size_t col = 0; col < d2; ++col) {
    store_column(super, col, map(unit(dim, col / dim, col % dim)), dim);
  }
  return super;
}

}  // namespace serial

namespace parallel {

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_matmul_shapes(a, b);
  ComplexMatrix c(a.rows(), b.cols());
  const auto rows = static_cast<std::int64_t>(a.rows());
#pragma omp parallel for schedule(static) if (a.rows() >= kParallelThreshold)
  for (std::int64_t i = 0; i < rows; ++i) matmul_row(a, b, c, static_cast<std::size_t>(i));
  return c;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows() * b.rows(), a.cols() * b.cols());
  const auto rows = static_cast<std::int64_t>(a.rows());
#pragma omp parallel for schedule(static) if (c.rows() >= kParallelThreshold)
  for (std::int64_t i = 0; i < rows; ++i) kron_row(a, b, c, static_cast<std::size_t>(i));
  return c;
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& rho) {
  require_conjugate_shapes(u, rho);
  return matmul(matmul(u, rho), u.adjoint());
}

ComplexMatrix superoperator(const MatrixMap& map, std::size_t dim) {
  const std::size_t d2 = dim * dim;
  ComplexMatrix super(d2, d2);
  const auto cols = static_cast<std::int64_t>(d2);
  // Invalid map output is reported after the region; exceptions may not
  // leave an OpenMP worksharing loop.
  bool shape_error = false;
#pragma omp parallel for schedule(dynamic) if (d2 >= kParallelThreshold)
  for (std::int64_t col = 0; col < cols; ++col) {
    const auto c = static_cast<std::size_t>(col);
    const ComplexMatrix image = map(unit(dim, c / dim, c % dim));
    if (image.rows() != dim || image.cols() != dim) {
#pragma omp atomic write
      shape_error = true;
      continue;
    }
    store_column(super, c, image, dim);
  }
  if (shape_error) throw InvalidArgument("superoperator: map changed the matrix dimension");
  return super;
}

}  // namespace parallel

}  // namespace ctcsim::kernels
