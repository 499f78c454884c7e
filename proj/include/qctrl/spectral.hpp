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

#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "qctrl/closed_form.hpp"

// Phase variance of a continuum of controller modes,
//   (Delta Phi)^2(t) = Int 16 (g^2/w^2) rho(w) sin^2(w t / 2) dw,
// over (-cutoff, cutoff). g(w) cancels inside the named densities.
namespace qctrl {

enum class DensityKind { Flat, Ohmic, Tabulated };

/// Integrand weight sample for a tabulated density: the combined factor
/// 16 g^2 rho / w^2 at frequency w.
struct WeightPoint {
  double omega;
  double weight;
};

struct SpectralDensity {
  DensityKind kind{DensityKind::Flat};
  double gamma{0.0};  ///< Flat: rho = gamma / g^2
  double eta_c{0.0};  ///< Ohmic: rho = 2 eta_c w^2 / (pi g^2)
  std::vector<WeightPoint> points;  ///< Tabulated, w >= 0 and sorted
  double cutoff{std::numeric_limits<double>::infinity()};
  bool one_sided{false};  ///< integrate (0, cutoff) only; halves the result

  static SpectralDensity flat(double gamma,
                              double cutoff = std::numeric_limits<double>::infinity());
  static SpectralDensity ohmic(double eta_c, double cutoff);
  static SpectralDensity tabulated(std::vector<WeightPoint> points,
                                   double cutoff = std::numeric_limits<double>::infinity());

  void validate() const;
  /// Integrand at frequency w and time t, with the w -> 0 limit resolved.
  double integrand(double omega, double t) const;
};

/// Adaptive quadrature of the variance integral with relative tolerance
/// rel_tol in [1e-12, 1e-3]. A flat density with infinite cutoff is evaluated
/// by a cutoff sweep extrapolated in 1/cutoff; an Ohmic density with infinite
/// cutoff throws DivergentIntegral.
double variance_integral(const SpectralDensity& density, double t, double rel_tol = 1e-10);

/// Exact value of the flat-density integral, 8 pi gamma t (two-sided).
double flat_variance_reference(double gamma, double t);

struct SlopeFit {
  double slope{0.0};
  double intercept{0.0};
  double linearity_residual{0.0};  ///< max |value - fit| / (slope * t_max)
};

/// Least-squares line through the flat-density variance on `t_grid`
/// (>= 4 strictly increasing positive times). Throws NumericalError when the
/// linearity residual reaches 1e-3.
SlopeFit flat_slope(double gamma, std::span<const double> t_grid, double rel_tol = 1e-10);

enum class Convergence { Convergent, Divergent };

struct DivergenceReport {
  std::vector<double> cutoffs;
  std::vector<double> values;
  /// Successive ratios of the increment per unit cutoff; ~1 for linear growth,
  /// ~0 for a convergent tail.
  std::vector<double> growth_ratios;
  Convergence classification{Convergence::Convergent};
  /// Every growth ratio within 5% of one.
  bool linear_growth{false};
};

/// Evaluates the variance at each cutoff (>= 3, strictly increasing) and
/// classifies the tail.
DivergenceReport divergence_probe(const SpectralDensity& density, double t,
                                  std::span<const double> cutoffs, double rel_tol = 1e-10);

/// `n` discrete modes at the midpoints of (0, cutoff] whose summed coherent
/// variance 2 xi_total is a midpoint-rule estimate of the integral. The
/// mapping is g_k^2 = weight(w_k) w_k^2 dw * sides / 4, because one mode
/// contributes |eta_k|^2 = 4 (g_k/w_k)^2 sin^2(w_k t/2).
std::vector<ModeSpec> sample_modes(const SpectralDensity& density, int n);

}  // namespace qctrl
