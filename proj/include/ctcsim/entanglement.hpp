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

#include <set>
#include <string>
#include <vector>

#include "ctcsim/qmath.hpp"

namespace ctcsim {

/// Two disjoint label sets covering a register.
struct BipartiteCut {
  std::set<std::string> side_a;
  std::set<std::string> side_b;

  /// Throws InvalidArgument unless the sides are disjoint and cover `layout`.
  void validate(const RegisterLayout& layout) const;

  /// "AC:BD" style name.
  std::string name() const;
};

/// Transposes the side_a indices of rho.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, const RegisterLayout& layout,
                                const BipartiteCut& cut);
ComplexMatrix partial_transpose(const DensityOperator& rho, const RegisterLayout& layout,
                                const BipartiteCut& cut);

/// log2 || rho^{T_A} ||_1. Zero for PPT states, 1 for a Bell pair.
double log_negativity(const DensityOperator& rho, const RegisterLayout& layout, const BipartiteCut& cut);

/// True iff the smallest eigenvalue of the partial transpose is >= -tol.
bool is_ppt(const DensityOperator& rho, const RegisterLayout& layout, const BipartiteCut& cut,
            double tol = 1e-10);

/// Four-qubit Smolin state on (A, B, C, D):
///   1/4 sum_k |B_k><B_k|_AB (x) |B_k><B_k|_CD  over the four Bell states.
DensityOperator smolin_state();

RegisterLayout smolin_layout();

/// The three balanced cuts AB:CD, AC:BD, AD:BC.
std::vector<BipartiteCut> smolin_cuts();

/// P rho P^dagger for the qubit permutation taking position p to perm[p].
ComplexMatrix permute_qubits(const ComplexMatrix& rho, const std::vector<std::size_t>& perm);

}  // namespace ctcsim
