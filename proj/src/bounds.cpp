// Copyright 2026 The qctrl Authors
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

#include "qctrl/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qctrl/errors.hpp"

namespace qctrl {

namespace {

constexpr cplx kI{0.0, 1.0};

double interior_norm(const OperatorMatrix& m) {
  const Eigen::Index n = std::max<Eigen::Index>(1, m.rows() - 2);
  return m.topLeftCorner(n, n).norm();
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) { return a * b - b * a; }

}  // namespace

BoundReport BoundReport::make(double lhs, double rhs) {
  BoundReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = lhs - rhs;
  r.satisfied = r.slack >= -1e-9 * std::max(1.0, std::abs(rhs));
  return r;
}

BoundReport robertson_check(const OperatorMatrix& A, const OperatorMatrix& B,
                            const TruncatedState& state) {
  if (!is_hermitian(A) || !is_hermitian(B)) throw InvalidInput("Robertson check needs Hermitian operators");
  if (A.rows() != state.dim() || B.rows() != state.dim()) {
    throw InvalidInput("operator/state dimension mismatch");
  }
  const int dim = state.dim();
  const double edge = dim > 2 ? leakage(state, 2) : 1.0;
  StateVector psi = state.amplitudes();
  if (dim > 2) psi.tail(2).setZero();
  if (!(psi.norm() > 0.0)) throw InvalidInput("state has no weight on the interior subspace");
  psi.normalize();

  const StateVector a_psi = A * psi;
  const StateVector b_psi = B * psi;
  const double mean_a = psi.dot(a_psi).real();
  const double mean_b = psi.dot(b_psi).real();
  const double var_a = std::max(0.0, a_psi.squaredNorm() - mean_a * mean_a);
  const double var_b = std::max(0.0, b_psi.squaredNorm() - mean_b * mean_b);
  // <[A,B]> = <A psi|B psi> - <B psi|A psi> = 2i Im<A psi|B psi>
  const double comm = std::abs(a_psi.dot(b_psi).imag());

  auto r = BoundReport::make(std::sqrt(var_a * var_b), comm);
  r.reliable = edge < kLeakageThreshold;
  return r;
}

OperatorMatrix interaction_operator(const ModeSpec& mode, double t, int dim) {
  const auto [a, ad] = ladder(dim);
  const cplx c = mode.g * std::polar(1.0, -mode.omega * t);
  return c * a + std::conj(c) * ad;
}

OperatorMatrix controller_hamiltonian(const ModeSpec& mode, int dim) {
  return mode.omega * number_operator(dim);
}

OperatorMatrix phase_operator(cplx eta, int dim) {
  const auto [a, ad] = ladder(dim);
  return eta * a + std::conj(eta) * ad;
}

OperatorMatrix dual_phase_operator(cplx eta, int dim) {
  const auto [a, ad] = ladder(dim);
  return kI * (-eta * a + std::conj(eta) * ad);
}

double DpoResiduals::max() const {
  return std::max({theta_definition, number_commutator, phase_commutator});
}

DpoResiduals dpo_algebra_check(std::span<const ModeSpec> modes, double t, int dim) {
  if (modes.empty()) throw InvalidInput("mode list must not be empty");
  DpoResiduals r;
  r.edge_dominated = dim < 20;
  const OperatorMatrix N = number_operator(dim);
  const OperatorMatrix I = OperatorMatrix::Identity(dim, dim);
  for (const auto& m : modes) {
    const cplx eta = mode_coefficients(m, t).eta;
    const OperatorMatrix phi = phase_operator(eta, dim);
    const OperatorMatrix theta = dual_phase_operator(eta, dim);
    const double f_mode = 2.0 * std::norm(eta);
    r.F += f_mode;
    r.theta_definition = std::max(r.theta_definition, interior_norm(theta - kI * commutator(N, phi)));
    r.number_commutator = std::max(r.number_commutator, interior_norm(commutator(N, theta) - kI * phi));
    r.phase_commutator =
        std::max(r.phase_commutator, interior_norm(commutator(phi, theta) - kI * f_mode * I));
  }
  return r;
}

NumberPhaseReport number_phase_bound(std::span<const ModeSpec> modes, double t) {
  if (modes.empty()) throw InvalidInput("mode list must not be empty");
  double photons = 0.0;
  double phase = 0.0;
  double spread2 = 0.0;
  for (const auto& m : modes) {
    const cplx eta = mode_coefficients(m, t).eta;
    photons += std::norm(m.alpha);
    phase += 2.0 * (eta * m.alpha).real();
    spread2 += std::norm(eta);
  }
  if (photons == 0.0) throw UndefinedResult("number-phase bound undefined for <N> = 0");
  NumberPhaseReport r;
  r.mean_photons = photons;
  r.delta_photons = std::sqrt(photons);
  r.phase_mean = phase;
  const double spread = std::sqrt(spread2);
  r.bound = BoundReport::make(spread, std::abs(phase) / (2.0 * photons));
  r.rhs_robertson = std::abs(phase) / (2.0 * std::sqrt(photons));
  r.robertson_satisfied = BoundReport::make(spread, r.rhs_robertson).satisfied;
  r.small_photon_regime = photons < 1.0;
  return r;
}

PhaseMoments phase_moments_numeric(const ModeSpec& mode, double t, int dim) {
  const cplx eta = mode_coefficients(mode, t).eta;
  const auto state = coherent_state(mode.alpha, dim);
  const OperatorMatrix phi = phase_operator(eta, dim);
  const OperatorMatrix theta = dual_phase_operator(eta, dim);
  const OperatorMatrix N = number_operator(dim);
  return {expectation(phi, state).real(), std::sqrt(variance(phi, state)),
          std::sqrt(variance(theta, state)), expectation(N, state).real(),
          std::sqrt(variance(N, state))};
}

void ControlBudget::validate() const {
  if (!(E > 0.0) || !std::isfinite(E)) throw InvalidInput("budget energy must be > 0");
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidInput("budget duration must be > 0");
  if (!(lambda >= 0.0 && lambda <= 0.25)) throw InvalidInput("lambda must lie in [0, 1/4]");
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidInput("Planck constant must be > 0");
  if (!std::isfinite(phi_target)) throw InvalidInput("target phase must be finite");
}

double epsilon_lower_bound(const ControlBudget& budget) {
  budget.validate();
  const double s = budget.action();
  return budget.lambda * budget.h * budget.h * budget.phi_target * budget.phi_target / (4.0 * s * s);
}

ControlBudget natural_units_budget(const ModeSpec& mode, double phi_target, double lambda) {
  mode.validate();
  ControlBudget b;
  b.E = mode.omega * std::norm(mode.alpha);
  b.T = 2.0 * std::numbers::pi / mode.omega;
  b.h = 2.0 * std::numbers::pi;
  b.phi_target = phi_target;
  b.lambda = lambda;
  b.validate();
  return b;
}

}  // namespace qctrl
