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

#include "qctrl/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qctrl/errors.hpp"

namespace qctrl {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput("time must be finite and >= 0");
}

void require_modes(std::span<const ModeSpec> modes) {
  if (modes.empty()) throw InvalidInput("mode list must not be empty");
  for (const auto& m : modes) m.validate();
}

}  // namespace

void ModeSpec::validate() const {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw InvalidInput("mode frequency must be finite and > 0, got " + std::to_string(omega));
  }
  if (!finite(g)) throw InvalidInput("mode coupling must be finite");
  if (!finite(alpha)) throw InvalidInput("coherent amplitude must be finite");
}

QubitState::QubitState(cplx c0, cplx c1) : c0_(c0), c1_(c1) {
  const double n = std::norm(c0) + std::norm(c1);
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-12) {
    throw InvalidInput("qubit amplitudes must satisfy |c0|^2 + |c1|^2 = 1");
  }
}

QubitState QubitState::balanced() {
  const double s = 1.0 / std::numbers::sqrt2;
  return {cplx(s, 0.0), cplx(s, 0.0)};
}

ModeCoefficients mode_coefficients(const ModeSpec& mode, double t) {
  mode.validate();
  require_time(t);
  const double w = mode.omega;
  const double wt = w * t;
  const double r2 = std::norm(mode.g) / (w * w);
  const cplx eta = cplx(0.0, 1.0) * (mode.g / w) * (1.0 - std::polar(1.0, -wt));
  return {eta, r2 * (wt - std::sin(wt)), r2 * (1.0 - std::cos(wt))};
}

DecoherenceReport decoherence_factor(std::span<const ModeSpec> modes, double t) {
  require_modes(modes);
  require_time(t);
  DecoherenceReport r;
  r.t = t;
  for (const auto& m : modes) {
    const auto c = mode_coefficients(m, t);
    // <eta a + eta^* a^dagger> over |alpha> is 2 Re(eta alpha).
    r.phase_mean += 2.0 * (c.eta * m.alpha).real() + c.varphi;
    r.xi_total += c.xi;
  }
  r.phase_variance = 2.0 * r.xi_total;
  r.D = std::exp(cplx(-r.xi_total, r.phase_mean));
  return r;
}

double fidelity_from_factor(double lambda, cplx D, double phi_target) {
  return 1.0 - 2.0 * lambda * (1.0 - (D * std::polar(1.0, -phi_target)).real());
}

double fidelity(const QubitState& qubit, std::span<const ModeSpec> modes, double t,
                double phi_target) {
  if (!std::isfinite(phi_target)) throw InvalidInput("target phase must be finite");
  return fidelity_from_factor(qubit.lambda(), decoherence_factor(modes, t).D, phi_target);
}

double error_measure(const QubitState& qubit, const DecoherenceReport& report, ErrorMode mode) {
  const double lambda = qubit.lambda();
  switch (mode) {
    case ErrorMode::Exact:
      return 2.0 * lambda * (1.0 - std::exp(-report.xi_total));
    case ErrorMode::SmallVariance:
      return lambda * report.phase_variance;
  }
  return 0.0;
}

bool small_variance_out_of_regime(const DecoherenceReport& report) {
  return report.xi_total > kSmallVarianceLimit;
}

DecoherenceReport full_report(const QubitState& qubit, std::span<const ModeSpec> modes, double t,
                              double phi_target, ErrorMode mode) {
  if (!std::isfinite(phi_target)) throw InvalidInput("target phase must be finite");
  auto r = decoherence_factor(modes, t);
  r.fidelity = fidelity_from_factor(qubit.lambda(), r.D, phi_target);
  r.error = error_measure(qubit, r, mode);
  return r;
}

double auto_phi_target(std::span<const ModeSpec> modes, double t) {
  double phi = 0.0;
  for (const auto& m : modes) phi += std::norm(m.g) * t / m.omega;
  return phi;
}

CabcResidual cabc_residual(std::span<const ModeSpec> modes, double T) {
  require_modes(modes);
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidInput("gate duration must be > 0");
  CabcResidual r{0.0, 0.0, true};
  for (const auto& m : modes) {
    const auto c = mode_coefficients(m, T);
    const cplx evolved = m.alpha + cplx(0.0, 1.0) * std::conj(c.eta);
    r.v0 += 2.0 * (m.g * m.alpha).real();
    r.vT += 2.0 * (m.g * evolved * std::polar(1.0, -m.omega * T)).real();
    if (m.g == cplx(0.0, 0.0)) continue;
    const double turns = m.omega * T / (2.0 * std::numbers::pi);
    const bool revival = std::abs(turns - std::round(turns)) <= 1e-9 * std::max(1.0, turns);
    const bool imaginary = std::abs((m.g * m.alpha).real()) <= 1e-12;
    if (!(revival && imaginary)) r.special_case_satisfied = false;
  }
  return r;
}

cplx commutator_scalar(std::span<const ModeSpec> modes, double t, double t2) {
  require_modes(modes);
  require_time(t);
  require_time(t2);
  double s = 0.0;
  for (const auto& m : modes) s += std::norm(m.g) * std::sin(m.omega * (t - t2));
  return cplx(0.0, -2.0 * s);
}

QuadratureCoefficients quadrature_coefficients(const ModeSpec& mode, double t) {
  const cplx eta = mode_coefficients(mode, t).eta;
  const double s = std::numbers::sqrt2;
  // kappa = (eta + eta^*)/sqrt2, mu = i(eta - eta^*)/sqrt2
  return {s * eta.real(), -s * eta.imag()};
}

double coherent_mode_variance(const ModeSpec& mode, double t) {
  return std::norm(mode_coefficients(mode, t).eta);
}

double sql_mode_bound(const ModeSpec& mode, double t) {
  mode.validate();
  require_time(t);
  if (mode.g.imag() != 0.0) {
    throw UnsupportedRegime("standard-quantum-limit bound assumes a real coupling g/omega");
  }
  const double r = mode.g.real() / mode.omega;
  const double half = 0.5 * mode.omega * t;
  const double s = std::sin(half);
  return 8.0 * r * r * std::abs(s * s * s * std::cos(half));
}

DegenerateLimit degenerate_limit(int n_modes, const ModeSpec& mode, double t) {
  if (n_modes < 1) throw InvalidInput("degenerate mode count must be >= 1");
  const ModeSpec single[] = {mode};
  const double phi = n_modes * decoherence_factor(single, t).phase_mean;
  const double dphi = std::sqrt(8.0 * n_modes) * std::abs(mode.g) / mode.omega *
                      std::abs(std::sin(0.5 * mode.omega * t));
  if (phi == 0.0) return {dphi, phi, std::nullopt};
  return {dphi, phi, dphi / std::abs(phi)};
}

}  // namespace qctrl
