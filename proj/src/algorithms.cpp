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

#include "qctrl/algorithms.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qctrl/errors.hpp"

namespace qctrl {

std::string_view to_string(AlgorithmFamily family) {
  switch (family) {
    case AlgorithmFamily::GeneralUnitary:
      return "general";
    case AlgorithmFamily::Grover:
      return "grover";
    case AlgorithmFamily::Shor:
      return "shor";
  }
  return "unknown";
}

AlgorithmFamily parse_family(std::string_view name) {
  if (name == "general" || name == "general_unitary") return AlgorithmFamily::GeneralUnitary;
  if (name == "grover") return AlgorithmFamily::Grover;
  if (name == "shor") return AlgorithmFamily::Shor;
  throw InvalidInput("unknown algorithm family '" + std::string(name) + "'");
}

void AlgorithmModel::validate() const {
  if (n < 1) throw InvalidInput("qubit count must be >= 1");
  if (!(prefactor > 0.0) || !std::isfinite(prefactor)) throw InvalidInput("gate-count prefactor must be > 0");
  if (!(shor_log > 0.0) || !std::isfinite(shor_log)) throw InvalidInput("Shor log constant must be > 0");
}

double log_gate_count(const AlgorithmModel& model) {
  model.validate();
  const double n = model.n;
  double raw = 0.0;
  switch (model.family) {
    case AlgorithmFamily::GeneralUnitary:
      raw = 2.0 * std::log(n) + n * std::log(4.0);
      break;
    case AlgorithmFamily::Grover:
      raw = 0.5 * n * std::numbers::ln2;
      break;
    case AlgorithmFamily::Shor:
      raw = 3.0 * std::log(n) + 3.0 * std::log(model.shor_log);
      break;
  }
  return std::max(0.0, raw + std::log(model.prefactor));
}

double gate_count(const AlgorithmModel& model) { return std::exp(log_gate_count(model)); }

double gate_count_direct(const AlgorithmModel& model) {
  model.validate();
  const double n = model.n;
  double raw = 0.0;
  switch (model.family) {
    case AlgorithmFamily::GeneralUnitary:
      raw = n * n * std::pow(4.0, n);
      break;
    case AlgorithmFamily::Grover:
      raw = std::sqrt(std::pow(2.0, n));
      break;
    case AlgorithmFamily::Shor:
      raw = n * n * n * model.shor_log * model.shor_log * model.shor_log;
      break;
  }
  return std::max(1.0, model.prefactor * raw);
}

double t_min(const ControlBudget& budget, double gates) {
  budget.validate();
  if (!(gates >= 1.0)) throw InvalidInput("gate count must be >= 1");
  return budget.h * std::sqrt(budget.lambda * gates) * std::abs(budget.phi_target) / (2.0 * budget.E);
}

double log_total_time(const AlgorithmModel& model, const ControlBudget& budget) {
  budget.validate();
  const double scale = budget.h * std::sqrt(budget.lambda) * std::abs(budget.phi_target) / (2.0 * budget.E);
  if (scale == 0.0) return -std::numeric_limits<double>::infinity();
  return 1.5 * log_gate_count(model) + std::log(scale);
}

double total_time(const AlgorithmModel& model, const ControlBudget& budget) {
  return std::exp(log_total_time(model, budget));
}

double total_time_direct(const AlgorithmModel& model, const ControlBudget& budget) {
  const double gates = gate_count_direct(model);
  return gates * t_min(budget, gates);
}

std::optional<int> crossover(const AlgorithmModel& model, const ControlBudget& budget,
                             double threshold_seconds) {
  if (!(threshold_seconds > 0.0)) throw InvalidInput("threshold must be > 0");
  if (std::isinf(threshold_seconds)) return std::nullopt;
  const double log_threshold = std::log(threshold_seconds);
  auto above = [&](int n) {
    AlgorithmModel m = model;
    m.n = n;
    return log_total_time(m, budget) > log_threshold;
  };
  if (!above(kMaxCrossoverQubits)) return std::nullopt;
  if (above(1)) return 1;
  int lo = 1;  // not above
  int hi = kMaxCrossoverQubits;  // above
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    (above(mid) ? hi : lo) = mid;
  }
  return hi;
}

ControlBudget default_algorithm_budget() {
  ControlBudget b;
  b.E = 1e-9;
  b.T = 1e-6;
  b.lambda = 0.25;
  b.phi_target = std::numbers::pi;
  return b;
}

}  // namespace qctrl
