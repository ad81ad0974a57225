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

#include "ctcsim/entanglement.hpp"

#include <algorithm>
#include <cmath>

namespace ctcsim {

void BipartiteCut::validate(const RegisterLayout& layout) const {
  if (side_a.empty() || side_b.empty()) throw InvalidArgument("cut sides must be non-empty");
  for (const auto& l : side_a) {
    if (side_b.count(l)) throw InvalidArgument("cut sides overlap on " + l);
    (void)layout.position(l);
  }
  for (const auto& l : side_b) (void)layout.position(l);
  if (side_a.size() + side_b.size() != layout.size()) throw InvalidArgument("cut does not cover the register");
}

std::string BipartiteCut::name() const {
  std::string out;
  for (const auto& l : side_a) out += l;
  out += ':';
  for (const auto& l : side_b) out += l;
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, const RegisterLayout& layout,
                                const BipartiteCut& cut) {
  cut.validate(layout);
  if (!rho.is_square() || rho.rows() != layout.dim())
    throw InvalidArgument("layout does not match operator dimension");
  std::size_t mask = 0;
  for (const auto& l : cut.side_a) mask |= std::size_t{1} << (layout.size() - 1 - layout.position(l));

  // Swapping the side_a bits between row and column index transposes
  // exactly those tensor factors.
  const std::size_t n = rho.rows();
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t r2 = (r & ~mask) | (c & mask);
      const std::size_t c2 = (c & ~mask) | (r & mask);
      out(r, c) = rho(r2, c2);
    }
  }
  return out;
}

ComplexMatrix partial_transpose(const DensityOperator& rho, const RegisterLayout& layout,
                                const BipartiteCut& cut) {
  return partial_transpose(rho.matrix(), layout, cut);
}

double log_negativity(const DensityOperator& rho, const RegisterLayout& layout, const BipartiteCut& cut) {
  return std::log2(trace_norm(partial_transpose(rho, layout, cut)));
}

bool is_ppt(const DensityOperator& rho, const RegisterLayout& layout, const BipartiteCut& cut, double tol) {
  const auto eig = hermitian_eigenvalues(partial_transpose(rho, layout, cut));
  return eig.back() >= -tol;
}

DensityOperator smolin_state() {
  ComplexMatrix rho(16, 16);
  for (BellLabel b : kAllBellLabels) {
    const auto v = states::bell(b).as_column();
    const ComplexMatrix proj = v * v.adjoint();
    rho += kron(proj, proj);
  }
  return DensityOperator::from_numerical(rho * Complex(0.25));
}

RegisterLayout smolin_layout() { return RegisterLayout::chronology_respecting({"A", "B", "C", "D"}); }

std::vector<BipartiteCut> smolin_cuts() {
  return {BipartiteCut{{"A", "B"}, {"C", "D"}}, BipartiteCut{{"A", "C"}, {"B", "D"}},
          BipartiteCut{{"A", "D"}, {"B", "C"}}};
}

ComplexMatrix permute_qubits(const ComplexMatrix& rho, const std::vector<std::size_t>& perm) {
  const std::size_t nq = qubit_count(rho.rows());
  if (perm.size() != nq) throw InvalidArgument("permutation length does not match qubit count");
  std::vector<std::size_t> check(perm);
  std::sort(check.begin(), check.end());
  for (std::size_t i = 0; i < nq; ++i)
    if (check[i] != i) throw InvalidArgument("not a permutation");

  auto map_index = [&](std::size_t idx) {
    std::size_t out = 0;
    for (std::size_t p = 0; p < nq; ++p) {
      if ((idx >> (nq - 1 - p)) & 1U) out |= std::size_t{1} << (nq - 1 - perm[p]);
    }
    return out;
  };
  const std::size_t n = rho.rows();
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(map_index(r), map_index(c)) = rho(r, c);
  return out;
}

}  // namespace ctcsim
