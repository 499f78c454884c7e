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

#include "qctrl/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "qctrl/errors.hpp"
#include "qctrl/quadrature.hpp"

namespace qctrl {

namespace {

constexpr double kPi = std::numbers::pi;

// sin^2(w t/2) / w^2, with the series t^2/4 (1 - x^2/3 + 2x^4/45) below |w| < 1e-3/t.
double sin2_over_w2(double omega, double t) {
  const double x = 0.5 * omega * t;
  if (std::abs(omega) * t < 1e-3) {
    const double x2 = x * x;
    return 0.25 * t * t * (1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 45.0);
  }
  const double s = std::sin(x);
  return s * s / (omega * omega);
}

double sin2(double omega, double t) {
  const double s = std::sin(0.5 * omega * t);
  return s * s;
}

double interpolate(const std::vector<WeightPoint>& pts, double omega) {
  const double w = std::abs(omega);
  if (pts.empty() || w > pts.back().omega) return 0.0;
  if (w <= pts.front().omega) return pts.front().weight;
  auto hi = std::lower_bound(pts.begin(), pts.end(), w,
                             [](const WeightPoint& p, double x) { return p.omega < x; });
  auto lo = hi - 1;
  const double f = (w - lo->omega) / (hi->omega - lo->omega);
  return lo->weight + f * (hi->weight - lo->weight);
}

double effective_cutoff(const SpectralDensity& d) {
  if (d.kind == DensityKind::Tabulated) return std::min(d.cutoff, d.points.back().omega);
  return d.cutoff;
}

double sides(const SpectralDensity& d) { return d.one_sided ? 1.0 : 2.0; }

// Integral over (0, cutoff) times the number of sides; cutoff finite.
double integrate_finite(const SpectralDensity& d, double cutoff, double t, double rel_tol) {
  if (t == 0.0 || cutoff == 0.0) return 0.0;
  // One panel per oscillation period of sin^2(w t / 2).
  const double period = 2.0 * kPi / t;
  const double n_panels = std::ceil(cutoff / period);
  if (n_panels > 2e5) {
    throw ConvergenceError("variance integral needs more than 2e5 oscillation panels (cutoff*t too large)");
  }
  std::vector<double> breaks;
  breaks.reserve(static_cast<std::size_t>(n_panels) + 2);
  for (double k = 0; k * period < cutoff; k += 1.0) breaks.push_back(k * period);
  if (cutoff - breaks.back() > 1e-12 * cutoff) {
    breaks.push_back(cutoff);
  } else {
    breaks.back() = cutoff;
  }
  if (breaks.size() < 2) breaks = {0.0, cutoff};
  const auto r = integrate_adaptive([&](double w) { return d.integrand(w, t); }, breaks, rel_tol,
                                    1e-300, 4'000'000);
  return sides(d) * r.value;
}

// Flat density with infinite cutoff. With cutoffs on zeros of sin(C t) the
// tail is -16 gamma / C + 32 gamma / (t^2 C^3) + O(C^-5); three such cutoffs
// determine the limit and the two tail coefficients.
double flat_infinite(const SpectralDensity& d, double t, double rel_tol) {
  const double inner_tol = std::max(1e-13, rel_tol * 0.01);
  const double base = 2.0 * kPi * 32.0 / t;
  const std::array<double, 3> c = {base, 2.0 * base, 4.0 * base};
  Eigen::Matrix3d m;
  Eigen::Vector3d v;
  for (int i = 0; i < 3; ++i) {
    m(i, 0) = 1.0;
    m(i, 1) = 1.0 / c[i];
    m(i, 2) = 1.0 / (c[i] * c[i] * c[i]);
    v[i] = integrate_finite(d, c[i], t, inner_tol);
  }
  return m.fullPivLu().solve(v)[0];
}

}  // namespace

SpectralDensity SpectralDensity::flat(double gamma, double cutoff) {
  SpectralDensity d;
  d.kind = DensityKind::Flat;
  d.gamma = gamma;
  d.cutoff = cutoff;
  d.validate();
  return d;
}

SpectralDensity SpectralDensity::ohmic(double eta_c, double cutoff) {
  SpectralDensity d;
  d.kind = DensityKind::Ohmic;
  d.eta_c = eta_c;
  d.cutoff = cutoff;
  d.validate();
  return d;
}

SpectralDensity SpectralDensity::tabulated(std::vector<WeightPoint> points, double cutoff) {
  SpectralDensity d;
  d.kind = DensityKind::Tabulated;
  d.points = std::move(points);
  d.cutoff = cutoff;
  d.validate();
  return d;
}

void SpectralDensity::validate() const {
  if (!(cutoff > 0.0)) throw InvalidInput("spectral cutoff must be > 0");
  switch (kind) {
    case DensityKind::Flat:
      if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidInput("flat density needs gamma > 0");
      break;
    case DensityKind::Ohmic:
      if (!(eta_c > 0.0) || !std::isfinite(eta_c)) throw InvalidInput("ohmic density needs eta_c > 0");
      break;
    case DensityKind::Tabulated:
      if (points.size() < 2) throw InvalidInput("tabulated density needs at least two points");
      for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (!(p.omega >= 0.0) || !(p.weight >= 0.0) || !std::isfinite(p.omega) ||
            !std::isfinite(p.weight)) {
          throw InvalidInput("tabulated density points must be finite and non-negative");
        }
        if (i > 0 && !(p.omega > points[i - 1].omega)) {
          throw InvalidInput("tabulated density frequencies must be strictly increasing");
        }
      }
      break;
  }
}

double SpectralDensity::integrand(double omega, double t) const {
  switch (kind) {
    case DensityKind::Flat:
      return 16.0 * gamma * sin2_over_w2(omega, t);
    case DensityKind::Ohmic:
      return 32.0 * eta_c / kPi * sin2(omega, t);
    case DensityKind::Tabulated:
      return interpolate(points, omega) * sin2(omega, t);
  }
  return 0.0;
}

double variance_integral(const SpectralDensity& density, double t, double rel_tol) {
  density.validate();
  if (!std::isfinite(t)) throw InvalidInput("time must be finite");
  if (!(rel_tol >= 1e-12 && rel_tol <= 1e-3)) {
    throw InvalidInput("rel_tol must lie in [1e-12, 1e-3]");
  }
  t = std::abs(t);  // the integrand is even in t
  if (t == 0.0) return 0.0;
  const double cutoff = effective_cutoff(density);
  if (std::isinf(cutoff)) {
    if (density.kind == DensityKind::Ohmic) {
      throw DivergentIntegral("ohmic phase variance diverges with the cutoff for t != 0");
    }
    return flat_infinite(density, t, rel_tol);
  }
  return integrate_finite(density, cutoff, t, rel_tol);
}

double flat_variance_reference(double gamma, double t) { return 8.0 * kPi * gamma * std::abs(t); }

SlopeFit flat_slope(double gamma, std::span<const double> t_grid, double rel_tol) {
  if (t_grid.size() < 4) throw InvalidInput("slope fit needs at least 4 time points");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0)) throw InvalidInput("slope fit times must be > 0");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw InvalidInput("slope fit times must increase");
  }
  if (gamma < 0.0 || !std::isfinite(gamma)) throw InvalidInput("gamma must be >= 0");
  if (gamma == 0.0) return {};

  const auto density = SpectralDensity::flat(gamma);
  const std::size_t n = t_grid.size();
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = variance_integral(density, t_grid[i], rel_tol);

  double mt = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mt += t_grid[i];
    my += y[i];
  }
  mt /= n;
  my /= n;
  double stt = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    stt += (t_grid[i] - mt) * (t_grid[i] - mt);
    sty += (t_grid[i] - mt) * (y[i] - my);
  }
  SlopeFit fit;
  fit.slope = sty / stt;
  fit.intercept = my - fit.slope * mt;
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(y[i] - (fit.intercept + fit.slope * t_grid[i])));
  }
  fit.linearity_residual = worst / (fit.slope * t_grid.back());
  if (!(fit.linearity_residual < 1e-3)) {
    throw NumericalError("flat-density variance is not linear in t (residual " +
                         std::to_string(fit.linearity_residual) + ")");
  }
  return fit;
}

DivergenceReport divergence_probe(const SpectralDensity& density, double t,
                                  std::span<const double> cutoffs, double rel_tol) {
  density.validate();
  if (cutoffs.size() < 3) throw InvalidInput("divergence probe needs at least 3 cutoffs");
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (!(cutoffs[i] > 0.0) || !std::isfinite(cutoffs[i])) {
      throw InvalidInput("probe cutoffs must be finite and > 0");
    }
    if (i > 0 && !(cutoffs[i] > cutoffs[i - 1])) {
      throw InvalidInput("probe cutoffs must be strictly increasing");
    }
  }
  DivergenceReport r;
  r.cutoffs.assign(cutoffs.begin(), cutoffs.end());
  for (double c : cutoffs) {
    SpectralDensity d = density;
    d.cutoff = c;
    r.values.push_back(variance_integral(d, t, rel_tol));
  }
  std::vector<double> per_unit;
  for (std::size_t i = 1; i < cutoffs.size(); ++i) {
    per_unit.push_back((r.values[i] - r.values[i - 1]) / (cutoffs[i] - cutoffs[i - 1]));
  }
  bool divergent = true;
  bool linear = true;
  for (std::size_t i = 1; i < per_unit.size(); ++i) {
    const double ratio = per_unit[i - 1] != 0.0 ? per_unit[i] / per_unit[i - 1] : 0.0;
    r.growth_ratios.push_back(ratio);
    if (!(ratio >= 0.5)) divergent = false;
    if (!(std::abs(ratio - 1.0) <= 0.05)) linear = false;
  }
  r.classification = divergent ? Convergence::Divergent : Convergence::Convergent;
  r.linear_growth = divergent && linear;
  return r;
}

std::vector<ModeSpec> sample_modes(const SpectralDensity& density, int n) {
  density.validate();
  if (n < 1) throw InvalidInput("mode count must be >= 1");
  const double cutoff = effective_cutoff(density);
  if (std::isinf(cutoff)) throw InvalidInput("mode sampling needs a finite cutoff");
  const double dw = cutoff / n;
  std::vector<ModeSpec> modes(n);
  for (int k = 0; k < n; ++k) {
    const double w = (k + 0.5) * dw;
    double weight = 0.0;
    switch (density.kind) {
      case DensityKind::Flat:
        weight = 16.0 * density.gamma / (w * w);
        break;
      case DensityKind::Ohmic:
        weight = 32.0 * density.eta_c / kPi;
        break;
      case DensityKind::Tabulated:
        weight = interpolate(density.points, w);
        break;
    }
    modes[k].omega = w;
    modes[k].g = std::sqrt(weight * w * w * dw * sides(density) / 4.0);
    modes[k].alpha = 0.0;
  }
  return modes;
}

}  // namespace qctrl
