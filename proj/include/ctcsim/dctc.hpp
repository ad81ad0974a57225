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

// Deutsch self-consistency for a CTC register. For an interaction U on
// (CR, CTC) and a fixed CR input rho_CR, the CTC register must satisfy
//
//     sigma = Phi(sigma) = Tr_CR( U (rho_CR (x) sigma) U^dagger ).
//
// Phi is linear and CPTP in sigma, so a fixed point always exists; it need
// not be unique. The solver returns the Cesaro limit of the iterates
// started from the maximally mixed state, together with the dimension of
// the eigenvalue-1 space of the vectorized map so callers can tell
// whether the selection was forced.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "ctcsim/circuits.hpp"
#include "ctcsim/qmath.hpp"

namespace ctcsim {

struct SolverConfig {
  /// Trace-norm residual ||Phi(sigma) - sigma||_1 required on success.
  double tolerance = 1e-12;
  /// Bound on solver steps (plain iterations plus Cesaro doubling steps).
  std::size_t max_iterations = 1'000'000;
  /// Singular values of (L - I) below this count towards fp_space_dim.
  double eigen_tolerance = 1e-9;

  void validate() const;
};

enum class SolverMethod { PlainIteration, CesaroAverage };

std::string_view to_string(SolverMethod m);

struct FixedPointResult {
  DensityOperator fixed_point;
  double residual = 0.0;
  std::size_t iterations = 0;
  /// Number of iterates averaged (1 for plain iteration).
  std::size_t averaged_terms = 1;
  std::size_t fp_space_dim = 0;
  bool unique = false;
  SolverMethod method = SolverMethod::PlainIteration;
};

/// The solver ran out of steps before the residual reached tolerance.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

/// One application of Phi.
DensityOperator ctc_map(const UnitaryOperator& u, const DensityOperator& rho_cr,
                        const DensityOperator& sigma, const RegisterLayout& layout);

/// d^2 x d^2 matrix of sigma -> Phi(sigma) in row-major vectorization
/// (see kernels::serial::superoperator), d = dim of the CTC register.
ComplexMatrix ctc_superoperator(const UnitaryOperator& u, const DensityOperator& rho_cr,
                                const RegisterLayout& layout);

/// Dimension of the eigenvalue-1 space of a superoperator.
std::size_t fixed_point_space_dim(const ComplexMatrix& superop, double eigen_tolerance);

FixedPointResult solve_fixed_point(const UnitaryOperator& u, const DensityOperator& rho_cr,
                                   const RegisterLayout& layout, const SolverConfig& cfg = {});

/// rho_CR' = Tr_CTC( U (rho_CR (x) sigma*) U^dagger ) with sigma* from
/// solve_fixed_point.
std::pair<DensityOperator, FixedPointResult> apply_dctc(const UnitaryOperator& u,
                                                        const DensityOperator& rho_cr,
                                                        const RegisterLayout& layout,
                                                        const SolverConfig& cfg = {});

}  // namespace ctcsim
