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


#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qctrl/closed_form.hpp"
#include "qctrl/errors.hpp"
#include "qctrl/spectral.hpp"

using namespace qctrl;
using std::numbers::pi;

TEST_CASE("zero_time_gives_zero_variance") {
  CHECK(variance_integral(SpectralDensity::flat(0.1), 0.0) == 0.0);
  CHECK(variance_integral(SpectralDensity::ohmic(0.05, 100.0), 0.0) == 0.0);
}

TEST_CASE("flat_density_infinite_cutoff") {
  const double v = variance_integral(SpectralDensity::flat(0.1), 2.0);
  CHECK(v == doctest::Approx(8.0 * pi * 0.1 * 2.0).epsilon(1e-8));
  CHECK(v == doctest::Approx(5.0265).epsilon(1e-4));
  CHECK(flat_variance_reference(0.1, 2.0) == doctest::Approx(5.0265482457));
}

TEST_CASE("flat_density_finite_cutoff_approaches_limit") {
  double previous = 0.0;
  for (double c : {10.0, 100.0, 1000.0}) {
    const double v = variance_integral(SpectralDensity::flat(0.1, c), 2.0);
    CHECK(v > previous);
    CHECK(v < 8.0 * pi * 0.2);
    previous = v;
  }
  // tail of 2 * 16 gamma * (1/2) / w^2 beyond the cutoff is ~ 16 gamma / C
  CHECK(8.0 * pi * 0.2 - previous == doctest::Approx(16.0 * 0.1 / 1000.0).epsilon(0.02));
}

TEST_CASE("variance_is_even_in_time_and_nonnegative") {
  const auto d = SpectralDensity::ohmic(0.05, 50.0);
  for (double t : {0.3, 1.0, 2.5}) {
    const double v = variance_integral(d, t);
    CHECK(v >= 0.0);
    CHECK(v == doctest::Approx(variance_integral(d, -t)).epsilon(1e-14));
  }
}

TEST_CASE("ohmic_infinite_cutoff_signals_divergence") {
  SpectralDensity d = SpectralDensity::ohmic(0.05, 10.0);
  d.cutoff = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(variance_integral(d, 1.0), DivergentIntegral);
}

TEST_CASE("ohmic_values_grow_linearly_with_cutoff") {
  const double cutoffs[] = {10.0, 100.0, 1000.0};
  const auto r = divergence_probe(SpectralDensity::ohmic(0.05, 10.0), 1.0, cutoffs);
  CHECK(r.classification == Convergence::Divergent);
  CHECK(r.linear_growth);
  // mean integrand (16 eta_c / pi) per unit w on each side
  const double slope = (r.values[2] - r.values[1]) / 900.0;
  CHECK(slope == doctest::Approx(2.0 * 16.0 * 0.05 / pi).epsilon(1e-2));
}

TEST_CASE("flat_probe_is_convergent") {
  const double cutoffs[] = {10.0, 100.0, 1000.0};
  const auto r = divergence_probe(SpectralDensity::flat(0.1), 1.0, cutoffs);
  CHECK(r.classification == Convergence::Convergent);
  CHECK_FALSE(r.linear_growth);
}

TEST_CASE("zero_time_probe_is_convergent") {
  const double cutoffs[] = {10.0, 100.0, 1000.0};
  for (const auto& d : {SpectralDensity::flat(0.1), SpectralDensity::ohmic(0.05, 10.0)}) {
    const auto r = divergence_probe(d, 0.0, cutoffs);
    CHECK(r.classification == Convergence::Convergent);
    for (double v : r.values) CHECK(v == 0.0);
  }
}

TEST_CASE("probe_needs_increasing_cutoffs") {
  const double two[] = {10.0, 100.0};
  const double bad[] = {10.0, 5.0, 100.0};
  CHECK_THROWS_AS(divergence_probe(SpectralDensity::flat(0.1), 1.0, two), InvalidInput);
  CHECK_THROWS_AS(divergence_probe(SpectralDensity::flat(0.1), 1.0, bad), InvalidInput);
}

TEST_CASE("flat_slope_examples") {
  const std::vector<double> grid{0.5, 1.0, 2.0, 4.0, 6.0, 10.0};
  const auto fit = flat_slope(0.1, grid);
  CHECK(fit.slope == doctest::Approx(8.0 * pi * 0.1).epsilon(0.01));
  CHECK(fit.linearity_residual < 1e-3);
  CHECK(flat_slope(0.0, grid).slope == 0.0);
  CHECK(flat_slope(0.2, grid).slope / fit.slope == doctest::Approx(2.0).epsilon(1e-6));
  const std::vector<double> short_grid{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(flat_slope(0.1, short_grid), InvalidInput);
}

TEST_CASE("flat_value_per_time_is_constant") {
  const auto d = SpectralDensity::flat(0.3);
  const double ref = variance_integral(d, 0.5) / 0.5;
  for (double t = 1.0; t <= 10.0; t += 1.0) CHECK(variance_integral(d, t) / t == doctest::Approx(ref).epsilon(1e-3));
}

TEST_CASE("one_sided_halves_the_value") {
  auto d = SpectralDensity::ohmic(0.05, 40.0);
  const double both = variance_integral(d, 1.3);
  d.one_sided = true;
  CHECK(variance_integral(d, 1.3) == doctest::Approx(both / 2.0).epsilon(1e-12));
}

TEST_CASE("tabulated_constant_weight_matches_ohmic") {
  const double w = 32.0 * 0.05 / pi;
  const auto tab = SpectralDensity::tabulated({{0.0, w}, {50.0, w}}, 50.0);
  CHECK(variance_integral(tab, 1.7) ==
        doctest::Approx(variance_integral(SpectralDensity::ohmic(0.05, 50.0), 1.7)).epsilon(1e-9));
}

TEST_CASE("density_validation") {
  CHECK_THROWS_AS(SpectralDensity::flat(-1.0).validate(), InvalidInput);
  CHECK_THROWS_AS(SpectralDensity::ohmic(0.1, 0.0).validate(), InvalidInput);
  CHECK_THROWS_AS(SpectralDensity::tabulated({{1.0, 1.0}, {0.5, 1.0}}).validate(), InvalidInput);
  CHECK_THROWS_AS(variance_integral(SpectralDensity::flat(0.1), 1.0, 1e-2), InvalidInput);
}

TEST_CASE("sampled_modes_converge_to_integral") {
  const auto d = SpectralDensity::flat(0.1, 50.0);
  const double t = 2.0;
  const double integral = variance_integral(d, t);
  const auto modes = sample_modes(d, 10000);
  const auto r = decoherence_factor(modes, t);
  CHECK(std::abs(r.phase_variance - integral) / integral < 0.01);
}

TEST_CASE("excessive_oscillation_count_is_a_convergence_error") {
  CHECK_THROWS_AS(variance_integral(SpectralDensity::ohmic(0.05, 1e9), 100.0), ConvergenceError);
}
