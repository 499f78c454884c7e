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

#include <numbers>
#include <optional>
#include <string_view>

#include "qctrl/bounds.hpp"

// Runtime floor of gate-model algorithms when every gate must meet the
// control-error bound: a gate in an L-gate circuit needs error <= 1/L, which
// costs at least t_min = h sqrt(lambda L) |phi| / (2E).
namespace qctrl {

enum class AlgorithmFamily { GeneralUnitary, Grover, Shor };

std::string_view to_string(AlgorithmFamily family);
/// Accepts "general", "general_unitary", "grover", "shor". Throws InvalidInput.
AlgorithmFamily parse_family(std::string_view name);

/// Largest qubit count searched by crossover().
inline constexpr int kMaxCrossoverQubits = 500;

struct AlgorithmModel {
  AlgorithmFamily family{AlgorithmFamily::GeneralUnitary};
  int n{1};
  double prefactor{1.0};                 ///< constant of the O(.) estimate
  double shor_log{std::numbers::ln2};    ///< Shor count is n^3 * shor_log^3

  void validate() const;
};

/// ln L(n). General: n^2 4^n; Grover: sqrt(2^n); Shor: n^3 shor_log^3; each
/// times the prefactor and floored at L = 1.
double log_gate_count(const AlgorithmModel& model);
double gate_count(const AlgorithmModel& model);
/// Same count in linear arithmetic, for cross-checking; overflows past n ~ 500.
double gate_count_direct(const AlgorithmModel& model);

/// h sqrt(lambda L) |phi| / (2E), seconds. Uses budget.E, lambda, phi_target, h.
double t_min(const ControlBudget& budget, double gates);

/// ln(L t_min(L)) = 1.5 ln L + ln(h sqrt(lambda) |phi| / 2E); -inf when the
/// bound vanishes.
double log_total_time(const AlgorithmModel& model, const ControlBudget& budget);
double total_time(const AlgorithmModel& model, const ControlBudget& budget);
/// L * t_min(L) evaluated directly.
double total_time_direct(const AlgorithmModel& model, const ControlBudget& budget);

/// Smallest n in [1, 500] whose total time exceeds `threshold_seconds`, or
/// nothing if none does. model.n is ignored.
std::optional<int> crossover(const AlgorithmModel& model, const ControlBudget& budget,
                             double threshold_seconds);

/// Defaults for the runtime estimates: E = 1e-9 J, lambda = 1/4, phi = pi,
/// T = 1 us.
ControlBudget default_algorithm_budget();

}  // namespace qctrl
