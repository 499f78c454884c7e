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
#include "qctrl/oracle.hpp"

using namespace qctrl;
using std::numbers::pi;

namespace {

const std::vector<ModeSpec> kFig1{{0.1, 1.0, 1.5}};

PropagationConfig config_for(const std::vector<ModeSpec>& modes, double t_max, std::vector<int> dims) {
  auto cfg = PropagationConfig::defaults(modes, t_max);
  cfg.dims = std::move(dims);
  return cfg;
}

}  // namespace

TEST_CASE("uncoupled_branch_stays_put") {
  const std::vector<ModeSpec> modes{{0.0, 1.0, 1.2}};
  const auto cfg = config_for(modes, 3.0, {30});
  const auto init = controller_state(modes, cfg);
  const double times[] = {1.0, 3.0};
  const auto traj = propagate_branch(modes, init, cfg, times);
  for (const auto& s : traj.states) CHECK((s.amplitudes() - init.amplitudes()).norm() < 1e-14);
}

TEST_CASE("branch_revives_after_one_period") {
  const auto cfg = config_for(kFig1, 2.0 * pi, {40});
  const auto init = controller_state(kFig1, cfg);
  const double times[] = {2.0 * pi};
  const auto traj = propagate_branch(kFig1, init, cfg, times);
  CHECK(std::abs(overlap(init, traj.states[0])) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("branch_displacement_at_half_period") {
  // The evolved amplitude is alpha + i conj(eta) = 1.5 + i conj(0.2i) = 1.7.
  const auto cfg = config_for(kFig1, pi, {40});
  const auto init = controller_state(kFig1, cfg);
  const double times[] = {pi};
  const auto traj = propagate_branch(kFig1, init, cfg, times);
  const cplx mean = expectation(ladder(40).a, traj.states[0]);
  const cplx eta = mode_coefficients(kFig1[0], pi).eta;
  CHECK(std::abs(mean - (kFig1[0].alpha + cplx(0.0, 1.0) * std::conj(eta))) < 1e-7);
  CHECK(std::abs(mean - cplx(1.7, 0.0)) < 1e-7);
}

TEST_CASE("numeric_factor_at_zero_time") {
  const auto cfg = config_for(kFig1, 0.0, {40});
  CHECK(std::abs(decoherence_factor_numeric(kFig1, cfg) - cplx(1.0)) < 1e-14);
}

TEST_CASE("numeric_factor_matches_closed_form") {
  for (cplx alpha : {cplx(1.5), cplx(0.0, 1.5), cplx(-0.7, 1.1)}) {
    const std::vector<ModeSpec> modes{{0.1, 1.0, alpha}};
    const auto cfg = config_for(modes, pi, {40});
    const cplx num = decoherence_factor_numeric(modes, cfg);
    const cplx closed = decoherence_factor(modes, pi).D;
    CHECK(std::abs(num - closed) < 1e-6);
    CHECK(std::abs(std::abs(num) - std::abs(closed)) < 1e-6);
    CHECK(std::abs(std::arg(num) - std::arg(closed)) < 1e-6);
  }
}

TEST_CASE("two_mode_numeric_factor_factorizes") {
  const std::vector<ModeSpec> both{{0.1, 1.0, 1.0}, {0.05, 0.7, 0.5}};
  const std::vector<ModeSpec> first{both[0]};
  const std::vector<ModeSpec> second{both[1]};
  const cplx joint = decoherence_factor_numeric(both, config_for(both, 3.0, {24, 16}));
  const cplx a = decoherence_factor_numeric(first, config_for(first, 3.0, {24}));
  const cplx b = decoherence_factor_numeric(second, config_for(second, 3.0, {16}));
  CHECK(std::abs(joint - a * b) < 1e-6);
  CHECK(std::abs(joint - decoherence_factor(both, 3.0).D) < 1e-6);
}

TEST_CASE("reduced_density_examples") {
  const QubitState q = QubitState::balanced();
  const auto pure = reduced_density(q, 1.0);
  CHECK(pure.is_pure());
  CHECK(std::abs(pure(0, 1) - cplx(0.5)) < 1e-15);

  const auto mixed = reduced_density(q, 0.0);
  CHECK(mixed.purity() == doctest::Approx(0.5));
  CHECK(std::abs(mixed(0, 1)) == 0.0);

  const auto partial = reduced_density(q, std::polar(0.980199, 0.0314159));
  const auto ev = partial.eigenvalues();
  CHECK(ev[0] == doctest::Approx(0.010).epsilon(1e-3));
  CHECK(ev[1] == doctest::Approx(0.990).epsilon(1e-3));
  CHECK(partial.trace() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(partial(0, 1)) <= std::sqrt(partial(0, 0).real() * partial(1, 1).real()) + 1e-15);

  CHECK_THROWS_AS(reduced_density(q, 1.01), InvalidInput);
}

TEST_CASE("numeric_fidelity_examples") {
  const auto cfg = config_for(kFig1, pi, {40});
  CHECK(fidelity_numeric(QubitState(1.0, 0.0), kFig1, 0.3, cfg) == doctest::Approx(1.0));
  const double closed = fidelity(QubitState::balanced(), kFig1, pi, 0.0628319);
  CHECK(std::abs(fidelity_numeric(QubitState::balanced(), kFig1, 0.0628319, cfg) - closed) < 1e-6);
}

TEST_CASE("fig1_curve_matches_closed_form_and_revives") {
  std::vector<double> times;
  for (int i = 0; i <= 40; ++i) times.push_back(4.0 * pi * i / 40);
  const auto cfg = config_for(kFig1, times.back(), {40});
  const auto num = decoherence_trajectory(kFig1, cfg, times);
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(std::abs(num.D[i] - decoherence_factor(kFig1, times[i]).D) < 1e-6);
  }
  CHECK(std::abs(std::abs(num.D[20]) - 1.0) < 1e-7);
  CHECK(std::abs(std::abs(num.D[40]) - 1.0) < 1e-7);
}

TEST_CASE("propagation_preserves_norm") {
  const std::vector<ModeSpec> modes{{0.3, 1.0, cplx(0.5, 0.5)}};
  auto cfg = config_for(modes, 100.0, {40});
  cfg.dt = 0.01;  // 10^4 steps
  const auto init = controller_state(modes, cfg);
  const double times[] = {100.0};
  const auto traj = propagate_branch(modes, init, cfg, times);
  CHECK(std::abs(traj.states[0].norm_squared() - 1.0) < 1e-9);
}

TEST_CASE("midpoint_rule_is_second_order") {
  const std::vector<ModeSpec> modes{{0.2, 1.0, 1.0}};
  auto cfg = config_for(modes, 3.0, {30});
  cfg.integrator = Integrator::Midpoint;
  const cplx exact = decoherence_factor(modes, 3.0).D;
  const auto init = controller_state(modes, cfg);
  const double times[] = {3.0};
  auto error_at = [&](double dt) {
    auto c = cfg;
    c.dt = dt;
    return std::abs(overlap(init, propagate_branch(modes, init, c, times).states[0]) - exact);
  };
  const double coarse = error_at(0.1);
  const double fine = error_at(0.05);
  CHECK(coarse / fine > 3.5);
}

TEST_CASE("magnus_step_is_exact_for_this_model_up_to_quadrature") {
  const std::vector<ModeSpec> modes{{0.2, 1.0, 1.0}};
  auto cfg = config_for(modes, 3.0, {30});
  cfg.dt = 0.05;
  const auto init = controller_state(modes, cfg);
  const double times[] = {3.0};
  const cplx d = overlap(init, propagate_branch(modes, init, cfg, times).states[0]);
  CHECK(std::abs(d - decoherence_factor(modes, 3.0).D) < 1e-8);
}

TEST_CASE("tiny_truncation_is_rejected") {
  auto cfg = config_for(kFig1, 1.0, {6});
  CHECK_THROWS_AS(decoherence_factor_numeric(kFig1, cfg), TruncationError);
}

TEST_CASE("leakage_during_propagation_reports_time") {
  // alpha = 0 fits in 12 levels initially; strong coupling pushes it out.
  const std::vector<ModeSpec> modes{{2.0, 1.0, 0.0}};
  auto cfg = config_for(modes, pi, {12});
  try {
    decoherence_factor_numeric(modes, cfg);
    FAIL("expected a truncation failure");
  } catch (const TruncationError& e) {
    CHECK(e.time() > 0.0);
    CHECK(e.time() <= pi);
  }
}

TEST_CASE("config_validation") {
  auto cfg = config_for(kFig1, 1.0, {40});
  cfg.dt = 0.0;
  CHECK_THROWS_AS(decoherence_factor_numeric(kFig1, cfg), InvalidInput);
  const std::vector<ModeSpec> three{{0.1, 1.0, 0.5}, {0.1, 1.0, 0.5}, {0.1, 1.0, 0.5}};
  CHECK_THROWS_AS(decoherence_factor_numeric(three, config_for(three, 1.0, {20, 20, 20})), InvalidInput);
}
