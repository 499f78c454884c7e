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

#include <complex>
#include <optional>
#include <span>

#include "qctrl/fock.hpp"

// Exact single- and multi-mode solution of a qubit whose |1> branch is driven
// by linearly coupled boson modes, V_I(t) = sum_k g_k a_k e^{-i w_k t} + h.c.
// Units: hbar = 1.
namespace qctrl {

/// One controller field mode.
struct ModeSpec {
  cplx g{0.0, 0.0};   ///< coupling (rad/time)
  double omega{1.0};  ///< angular frequency (rad/time), > 0
  cplx alpha{0.0, 0.0};  ///< coherent amplitude

  /// Throws InvalidInput on non-positive omega or non-finite fields.
  void validate() const;
};

struct ModeCoefficients {
  cplx eta;       ///< displacement coefficient of the phase operator
  double varphi;  ///< deterministic phase
  double xi;      ///< decay exponent, |eta|^2 / 2
};

/// Controlled two-level system c0|0> + c1|1>.
class QubitState {
 public:
  QubitState(cplx c0, cplx c1);
  /// Equal-weight superposition, lambda = 1/4.
  static QubitState balanced();
  cplx c0() const { return c0_; }
  cplx c1() const { return c1_; }
  /// |c0|^2 |c1|^2, in [0, 1/4].
  double lambda() const { return std::norm(c0_) * std::norm(c1_); }

 private:
  cplx c0_;
  cplx c1_;
};

enum class ErrorMode { Exact, SmallVariance };

/// xi above which the small-variance error estimate is flagged.
inline constexpr double kSmallVarianceLimit = 0.1;

struct DecoherenceReport {
  double t{0.0};
  double phase_mean{0.0};      ///< <Phi> including deterministic phases
  double phase_variance{0.0};  ///< (Delta Phi)^2 = 2 xi_total
  double xi_total{0.0};
  cplx D{1.0, 0.0};            ///< exp(i phase_mean - xi_total)
  double fidelity{1.0};
  double error{0.0};
};

ModeCoefficients mode_coefficients(const ModeSpec& mode, double t);

/// Fills t, phase_mean, phase_variance, xi_total and D. For coherent
/// controller states this is exact: the two-time commutator of V_I is a
/// c-number.
DecoherenceReport decoherence_factor(std::span<const ModeSpec> modes, double t);

/// decoherence_factor plus fidelity and error for a given target phase.
DecoherenceReport full_report(const QubitState& qubit, std::span<const ModeSpec> modes, double t,
                              double phi_target, ErrorMode mode = ErrorMode::Exact);

/// F = 1 - 2 lambda [1 - Re(D e^{-i phi_target})].
double fidelity(const QubitState& qubit, std::span<const ModeSpec> modes, double t,
                double phi_target);
double fidelity_from_factor(double lambda, cplx D, double phi_target);

/// Exact: 2 lambda (1 - e^{-xi}). SmallVariance: lambda (Delta Phi)^2.
double error_measure(const QubitState& qubit, const DecoherenceReport& report, ErrorMode mode);
/// True when the small-variance estimate is outside its validity range.
bool small_variance_out_of_regime(const DecoherenceReport& report);

/// sum_k |g_k|^2 t / w_k, the phase a revival gate imprints.
double auto_phi_target(std::span<const ModeSpec> modes, double t);

struct CabcResidual {
  double v0;
  double vT;
  bool special_case_satisfied;
};

/// <V_I(0)> and <V_I(T)> for the switching condition. The T value is taken on
/// the evolved controller amplitude alpha_k + i eta_k^*(T) of the driven
/// branch.
CabcResidual cabc_residual(std::span<const ModeSpec> modes, double T);

/// The c-number [V_I(t), V_I(t2)] = -2i sum_k |g_k|^2 sin(w_k (t - t2)).
cplx commutator_scalar(std::span<const ModeSpec> modes, double t, double t2);

struct QuadratureCoefficients {
  double kappa;  ///< coefficient of x = (a + a^dagger)/sqrt(2)
  double mu;     ///< coefficient of p = -i(a - a^dagger)/sqrt(2)
};

QuadratureCoefficients quadrature_coefficients(const ModeSpec& mode, double t);

/// Per-mode standard-quantum-limit floor 8 (g/w)^2 |sin^3(wt/2) cos(wt/2)|.
/// Throws UnsupportedRegime for complex g.
double sql_mode_bound(const ModeSpec& mode, double t);
/// Coherent-state phase variance of one mode, |eta(t)|^2.
double coherent_mode_variance(const ModeSpec& mode, double t);

struct DegenerateLimit {
  double delta_phi;  ///< sqrt(8N) |g|/w |sin(wt/2)|
  double phi;        ///< N times the single-mode phase_mean
  std::optional<double> ratio;  ///< delta_phi / |phi|; empty when phi = 0
};

/// N identical modes.
DegenerateLimit degenerate_limit(int n_modes, const ModeSpec& mode, double t);

}  // namespace qctrl
