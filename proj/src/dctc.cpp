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

#include "ctcsim/dctc.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "ctcsim/kernels.hpp"

namespace ctcsim {

namespace {

// Plain iteration gives up after this many steps without halving its best
// residual.
constexpr std::size_t kPlainStallWindow = 2000;
// N = 2^k averaged terms. Beyond this, rounding in L^N is no longer small.
constexpr int kMaxDoublings = 48;

struct Geometry {
  std::size_t n_cr;
  std::size_t n_ctc;
  std::vector<std::size_t> cr_positions;
  std::vector<std::size_t> ctc_positions;
  std::size_t cr_dim() const { return std::size_t{1} << n_cr; }
  std::size_t ctc_dim() const { return std::size_t{1} << n_ctc; }
};

Geometry geometry(const UnitaryOperator& u, const DensityOperator& rho_cr,
                  const RegisterLayout& layout) {
  if (!layout.cr_precedes_ctc()) throw InvalidArgument("layout must list CR qubits before CTC qubits");
  Geometry g{layout.labels_in(Subsystem::CR).size(), layout.labels_in(Subsystem::CTC).size(), {}, {}};
  if (g.n_cr == 0 || g.n_ctc == 0) throw InvalidArgument("layout needs both CR and CTC qubits");
  if (u.dim() != layout.dim()) throw InvalidArgument("interaction dimension does not match layout");
  if (rho_cr.dim() != g.cr_dim()) throw InvalidArgument("CR state dimension does not match layout");
  for (std::size_t p = 0; p < g.n_cr; ++p) g.cr_positions.push_back(p);
  for (std::size_t p = 0; p < g.n_ctc; ++p) g.ctc_positions.push_back(g.n_cr + p);
  return g;
}

// Tr_CR(U (rho (x) sigma) U^dagger) without validation.
ComplexMatrix phi(const ComplexMatrix& u, const ComplexMatrix& rho_cr, const ComplexMatrix& sigma,
                  const Geometry& g) {
  const ComplexMatrix joint = kernels::parallel::conjugate(u, kernels::parallel::kron(rho_cr, sigma));
  return partial_trace(joint, g.n_cr + g.n_ctc, g.ctc_positions);
}

ComplexMatrix vec(const ComplexMatrix& m) {
  return ComplexMatrix(m.rows() * m.cols(), 1, std::vector<Complex>(m.entries().begin(), m.entries().end()));
}

ComplexMatrix unvec(const ComplexMatrix& v, std::size_t dim) {
  return ComplexMatrix(dim, dim, std::vector<Complex>(v.entries().begin(), v.entries().end()));
}

// Hermitian part, rescaled to unit trace.
ComplexMatrix clean_state(const ComplexMatrix& m) {
  ComplexMatrix h = (m + m.adjoint()) * Complex(0.5);
  const double tr = h.trace().real();
  if (tr > 0.0) h *= Complex(1.0 / tr);
  return h;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(tolerance > 0.0)) throw InvalidArgument("solver tolerance must be positive");
  if (max_iterations < 1) throw InvalidArgument("solver needs at least one iteration");
  if (!(eigen_tolerance > 0.0)) throw InvalidArgument("eigen tolerance must be positive");
}

std::string_view to_string(SolverMethod m) {
  switch (m) {
    case SolverMethod::PlainIteration: return "plain";
    case SolverMethod::CesaroAverage: return "cesaro";
  }
  return "?";
}

DensityOperator ctc_map(const UnitaryOperator& u, const DensityOperator& rho_cr,
                        const DensityOperator& sigma, const RegisterLayout& layout) {
  const Geometry g = geometry(u, rho_cr, layout);
  if (sigma.dim() != g.ctc_dim()) throw InvalidArgument("CTC state dimension does not match layout");
  return DensityOperator::from_numerical(phi(u.matrix(), rho_cr.matrix(), sigma.matrix(), g));
}

ComplexMatrix ctc_superoperator(const UnitaryOperator& u, const DensityOperator& rho_cr,
                                const RegisterLayout& layout) {
  const Geometry g = geometry(u, rho_cr, layout);
  const ComplexMatrix& um = u.matrix();
  const ComplexMatrix& rm = rho_cr.matrix();
  return kernels::parallel::superoperator(
      [&](const ComplexMatrix& s) { return phi(um, rm, s, g); }, g.ctc_dim());
}

std::size_t fixed_point_space_dim(const ComplexMatrix& superop, double eigen_tolerance) {
  const auto sv = singular_values(superop - ComplexMatrix::identity(superop.rows()));
  std::size_t n = 0;
  for (double s : sv)
    if (s < eigen_tolerance) ++n;
  return n;
}

FixedPointResult solve_fixed_point(const UnitaryOperator& u, const DensityOperator& rho_cr,
                                   const RegisterLayout& layout, const SolverConfig& cfg) {
  cfg.validate();
  const Geometry g = geometry(u, rho_cr, layout);
  const std::size_t d = g.ctc_dim();
  const ComplexMatrix& um = u.matrix();
  const ComplexMatrix& rm = rho_cr.matrix();
  auto map = [&](const ComplexMatrix& s) { return phi(um, rm, s, g); };

  const ComplexMatrix superop = kernels::parallel::superoperator(map, d);
  const std::size_t fp_dim = fixed_point_space_dim(superop, cfg.eigen_tolerance);

  auto finish = [&](const ComplexMatrix& sigma, double residual, std::size_t steps, std::size_t terms,
                    SolverMethod method) {
    return FixedPointResult{DensityOperator::from_numerical(sigma), residual, steps, terms, fp_dim,
                            fp_dim == 1, method};
  };

  // Plain iteration from I/d.
  ComplexMatrix sigma = ComplexMatrix::identity(d) * Complex(1.0 / static_cast<double>(d));
  double best = std::numeric_limits<double>::infinity();
  double halving_mark = best;
  std::size_t steps = 0;
  std::size_t last_progress = 0;
  while (steps < cfg.max_iterations) {
    const ComplexMatrix next = map(sigma);
    ++steps;
    const double r = trace_distance(next, sigma);
    best = std::min(best, r);
    if (r < cfg.tolerance) return finish(sigma, r, steps, 1, SolverMethod::PlainIteration);
    if (r < 0.5 * halving_mark) {
      halving_mark = r;
      last_progress = steps;
    }
    if (steps - last_progress > kPlainStallWindow) break;
    sigma = clean_state(next);
  }

  // Cesaro mean tau_N = (1/N) sum_{n<N} L^n vec(sigma) for N = 2^k, using
  // C_{2N} = C_N (I + L^N) / 2 and L^{2N} = (L^N)^2.
  const std::size_t d2 = d * d;
  const ComplexMatrix start = vec(sigma);
  const ComplexMatrix ident = ComplexMatrix::identity(d2);
  ComplexMatrix cesaro = ident;
  ComplexMatrix power = superop;
  std::size_t terms = 1;
  for (int k = 0; k < kMaxDoublings && steps < cfg.max_iterations; ++k) {
    cesaro = kernels::parallel::matmul(cesaro, ident + power) * Complex(0.5);
    power = kernels::parallel::matmul(power, power);
    terms *= 2;
    ++steps;
    const ComplexMatrix tau = clean_state(unvec(kernels::parallel::matmul(cesaro, start), d));
    const double r = trace_distance(map(tau), tau);
    best = std::min(best, r);
    if (r < cfg.tolerance) return finish(tau, r, steps, terms, SolverMethod::CesaroAverage);
  }
  std::ostringstream msg;
  msg << "fixed-point solver did not reach tolerance " << cfg.tolerance << " within " << steps
      << " steps; best residual " << best;
  throw NonConvergence(msg.str(), best);
}

std::pair<DensityOperator, FixedPointResult> apply_dctc(const UnitaryOperator& u,
                                                        const DensityOperator& rho_cr,
                                                        const RegisterLayout& layout,
                                                        const SolverConfig& cfg) {
  FixedPointResult fp = solve_fixed_point(u, rho_cr, layout, cfg);
  const Geometry g = geometry(u, rho_cr, layout);
  const ComplexMatrix joint =
      kernels::parallel::conjugate(u.matrix(), kernels::parallel::kron(rho_cr.matrix(), fp.fixed_point.matrix()));
  DensityOperator out = DensityOperator::from_numerical(partial_trace(joint, g.n_cr + g.n_ctc, g.cr_positions));
  return {std::move(out), std::move(fp)};
}

}  // namespace ctcsim
