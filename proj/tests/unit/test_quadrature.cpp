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
#include "qctrl/errors.hpp"
#include "qctrl/quadrature.hpp"

using namespace qctrl;
using std::numbers::pi;

TEST_CASE("polynomial_integrates_exactly") {
  const double bp[] = {0.0, 2.0};
  const auto r = integrate_adaptive([](double x) { return x * x * x - x; }, bp, 1e-12);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r.panels == 1);
}

TEST_CASE("oscillatory_integral_over_many_panels") {
  std::vector<double> bp;
  for (int i = 0; i <= 20; ++i) bp.push_back(2.0 * pi * i);
  const auto r = integrate_adaptive([](double x) { return std::sin(x) * std::sin(x); }, bp, 1e-12);
  CHECK(r.value == doctest::Approx(20.0 * pi).epsilon(1e-12));
}

TEST_CASE("peaked_integrand_triggers_refinement") {
  const double bp[] = {-1.0, 1.0};
  const auto r = integrate_adaptive([](double x) { return 1.0 / (1e-4 + x * x); }, bp, 1e-10);
  CHECK(r.value == doctest::Approx(2.0 / 1e-2 * std::atan(1.0 / 1e-2)).epsilon(1e-9));
  CHECK(r.panels > 1);
}

TEST_CASE("panel_budget_exhaustion_is_an_error") {
  const double bp[] = {0.0, 1.0};
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return std::sin(1.0 / (x + 1e-9)); }, bp, 1e-12, 0.0, 8),
                  ConvergenceError);
}

TEST_CASE("breakpoints_must_increase") {
  const double bp[] = {1.0, 0.0};
  CHECK_THROWS_AS(integrate_adaptive([](double) { return 1.0; }, bp, 1e-10), InvalidInput);
}
