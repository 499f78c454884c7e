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

#pragma once

#include <array>
#include <span>
#include <vector>

#include "qctrl/closed_form.hpp"
#include "qctrl/fock.hpp"

// Brute-force propagation of the driven branch in truncated Fock space. Nothing
// here uses the analytic coefficients of closed_form; the two modules are
// independent routes to the same decoherence factor.
namespace qctrl {

enum class Integrator {
  Midpoint,  ///< exp(-i h V(t + h/2)), second order
  Magnus4,   ///< two-point Gauss Magnus step with the c-number commutator term
};

/// Largest dense tensor dimension the oracle accepts.
inline constexpr long long kMaxOracleDim = 4096;
/// Top-level weight that aborts a trajectory.
inline constexpr double kTrajectoryLeakageLimit = 1e-8;

struct PropagationConfig {
  double dt{0.0};
  double t_max{0.0};
  std::vector<int> dims;  ///< per-mode truncation; empty means default_dim(alpha_k)
  double tolerance{1e-8};  ///< accepted max |Delta D| between dt and dt/2
  Integrator integrator{Integrator::Magnus4};
  int max_halvings{12};

  /// dt = 2 pi / (200 w_max), default dims, given horizon.
  static PropagationConfig defaults(std::span<const ModeSpec> modes, double t_max);
};

struct Trajectory {
  std::vector<double> times;
  std::vector<TruncatedState> states;
};

/// Initial controller state: tensor product of the modes' coherent states.
TruncatedState controller_state(std::span<const ModeSpec> modes, const PropagationConfig& cfg);

/// Fixed-step propagation of `initial` under V_I(t), sampled at the given
/// non-decreasing times in [0, t_max]. Grid times are hit exactly; each gap is
/// split into ceil(gap/dt) equal steps. Throws TruncationError when the top
/// levels of any mode gain more than 1e-8 weight.
Trajectory propagate_branch(std::span<const ModeSpec> modes, const TruncatedState& initial,
                            const PropagationConfig& cfg, std::span<const double> sample_times);

struct NumericDecoherence {
  std::vector<double> times;
  std::vector<cplx> D;
  double dt{0.0};       ///< step size of the accepted run
  int halvings{0};
  double last_change{0.0};  ///< max |Delta D| between the last two runs
};

/// D(t) = <psi_c(0)| U(t) |psi_c(0)> on the grid, with step halving until the
/// change is below cfg.tolerance. Throws ConvergenceError after
/// cfg.max_halvings refinements.
NumericDecoherence decoherence_trajectory(std::span<const ModeSpec> modes,
                                          const PropagationConfig& cfg,
                                          std::span<const double> times);

/// D at cfg.t_max.
cplx decoherence_factor_numeric(std::span<const ModeSpec> modes, const PropagationConfig& cfg);

/// 2x2 reduced density matrix of the qubit.
class ReducedDensity {
 public:
  explicit ReducedDensity(const Eigen::Matrix2cd& rho) : rho_(rho) {}
  const Eigen::Matrix2cd& matrix() const { return rho_; }
  cplx operator()(int i, int j) const { return rho_(i, j); }
  double trace() const { return rho_.trace().real(); }
  /// Ascending.
  std::array<double, 2> eigenvalues() const;
  double purity() const { return (rho_ * rho_).trace().real(); }
  bool is_pure(double tol = 1e-9) const { return std::abs(purity() - 1.0) <= tol; }

 private:
  Eigen::Matrix2cd rho_;
};

/// |c0|^2|0><0| + |c1|^2|1><1| + c1 c0^* D |1><0| + h.c.
/// Throws InvalidInput if |D| > 1 + 1e-9.
ReducedDensity reduced_density(const QubitState& qubit, cplx D);

/// Tr(rho_t rho_r) with rho_t the pure target c0|0> + c1 e^{i phi}|1>.
double overlap_fidelity(const QubitState& qubit, const ReducedDensity& rho, double phi_target);

/// Fidelity at cfg.t_max from the numeric decoherence factor.
double fidelity_numeric(const QubitState& qubit, std::span<const ModeSpec> modes,
                        double phi_target, const PropagationConfig& cfg);

}  // namespace qctrl
