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

#include <span>

#include "qctrl/closed_form.hpp"
#include "qctrl/fock.hpp"

namespace qctrl {

/// Planck constant in J s.
inline constexpr double kPlanck = 6.62607015e-34;

/// lhs >= rhs check. satisfied <=> slack >= -1e-9 max(1, |rhs|).
struct BoundReport {
  double lhs{0.0};
  double rhs{0.0};
  bool satisfied{true};
  double slack{0.0};
  /// False when truncation edges carry enough weight to distort the numbers.
  bool reliable{true};

  static BoundReport make(double lhs, double rhs);
};

/// Robertson relation Delta A Delta B >= |<[A,B]>|/2 for Hermitian A, B.
/// The state is projected onto the interior subspace (top two Fock levels
/// removed) and renormalized; on that subspace products of ladder-linear
/// operators are exact. Throws InvalidInput for non-Hermitian input.
BoundReport robertson_check(const OperatorMatrix& A, const OperatorMatrix& B,
                            const TruncatedState& state);

/// V_I(t) = g a e^{-i w t} + h.c. of one mode.
OperatorMatrix interaction_operator(const ModeSpec& mode, double t, int dim);
/// H_c = w a^dagger a.
OperatorMatrix controller_hamiltonian(const ModeSpec& mode, int dim);
/// Phi_a = eta a + eta^* a^dagger.
OperatorMatrix phase_operator(cplx eta, int dim);
/// Theta = i(-eta a + eta^* a^dagger).
OperatorMatrix dual_phase_operator(cplx eta, int dim);

struct DpoResiduals {
  double theta_definition{0.0};   ///< ||Theta - i[N, Phi_a]||
  double number_commutator{0.0};  ///< ||[N, Theta] - i Phi_a||
  double phase_commutator{0.0};   ///< ||[Phi_a, Theta] - i F I||
  double F{0.0};                  ///< 2 sum_k |eta_k|^2
  bool edge_dominated{false};     ///< dim < 20

  double max() const;
};

/// Closed-algebra residuals, Frobenius norms on the interior block, maximized
/// over modes (each mode in its own dim-level space).
DpoResiduals dpo_algebra_check(std::span<const ModeSpec> modes, double t, int dim);

struct NumberPhaseReport {
  /// lhs = Delta Phi_a, rhs = |<Phi_a>| / (2 <N>).
  BoundReport bound;
  /// |<Phi_a>| / (2 sqrt<N>), the Robertson bound with Delta N = sqrt<N>.
  double rhs_robertson{0.0};
  bool robertson_satisfied{true};
  double mean_photons{0.0};
  double delta_photons{0.0};
  double phase_mean{0.0};  ///< <Phi_a>
  /// <N> < 1, where |<Phi_a>|/(2<N>) exceeds the Robertson bound.
  bool small_photon_regime{false};
};

/// Throws UndefinedResult when sum_k |alpha_k|^2 = 0.
NumberPhaseReport number_phase_bound(std::span<const ModeSpec> modes, double t);

/// Moments of the phase, dual phase and number operators of one mode, computed
/// from truncated matrices on the coherent state.
struct PhaseMoments {
  double phase_mean;
  double phase_spread;  ///< Delta Phi_a
  double dual_spread;   ///< Delta Theta
  double mean_photons;
  double photon_spread;  ///< Delta N
};
PhaseMoments phase_moments_numeric(const ModeSpec& mode, double t, int dim);

/// Control resources in SI units.
struct ControlBudget {
  double E{1e-9};          ///< energy, J
  double T{1e-6};          ///< duration, s
  double phi_target{0.0};  ///< |<Phi_a>|, rad
  double lambda{0.25};     ///< |c0|^2 |c1|^2
  double h{kPlanck};

  double action() const { return E * T; }
  void validate() const;
};

/// lambda h^2 phi^2 / (4 (E T)^2).
double epsilon_lower_bound(const ControlBudget& budget);

/// Budget for one coherent mode in hbar = 1 units: E = w |alpha|^2,
/// T = 2 pi / w, h = 2 pi.
ControlBudget natural_units_budget(const ModeSpec& mode, double phi_target, double lambda);

}  // namespace qctrl
