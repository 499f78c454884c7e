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

#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qctrl/algorithms.hpp"
#include "qctrl/bounds.hpp"
#include "qctrl/closed_form.hpp"
#include "qctrl/oracle.hpp"
#include "qctrl/spectral.hpp"

namespace qctrl::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

struct TimeGrid {
  double t_start{0.0};
  double t_end{0.0};
  int steps{2};

  /// Inclusive linspace; a single point when t_start == t_end and steps == 1.
  std::vector<double> values() const;
};

struct OracleSettings {
  std::optional<double> dt;
  double tolerance{1e-8};
  Integrator integrator{Integrator::Magnus4};
};

struct SpectralSettings {
  SpectralDensity density;
  std::vector<double> times;
  std::vector<double> cutoffs;
  double rel_tol{1e-10};
};

struct BoundsSettings {
  double t{0.0};
  int dim{0};  ///< 0 means default_dim of the first mode
};

struct AlgorithmSettings {
  AlgorithmFamily family{AlgorithmFamily::GeneralUnitary};
  int n_min{1};
  int n_max{60};
  double threshold_seconds{1e16};
  double prefactor{1.0};
  double shor_log{std::numbers::ln2};
};

struct OutputSettings {
  std::string path;  ///< empty: standard output
  std::string format{"csv"};
};

struct RunConfig {
  std::vector<ModeSpec> modes;
  std::optional<QubitState> qubit;
  std::optional<TimeGrid> time_grid;
  std::vector<int> truncation;
  std::optional<double> phi_target;  ///< empty: auto, sum_k |g_k|^2 t / w_k
  ErrorMode error_mode{ErrorMode::Exact};
  OracleSettings oracle;
  std::optional<SpectralSettings> spectral;
  std::optional<BoundsSettings> bounds;
  std::optional<ControlBudget> budget;
  std::optional<AlgorithmSettings> algorithms;
  OutputSettings output;

  /// FNV-1a 64 of the canonical (sorted-key) dump of the effective document.
  std::string hash;
  nlohmann::json document;
};

/// Maps JSON pointers ("/modes/0/g") to the 1-based line their value starts on.
std::map<std::string, int> json_line_index(const std::string& text);

/// Applies "dotted.path=value" overrides; the value is parsed as JSON when
/// possible, otherwise taken as a string.
void apply_overrides(nlohmann::json& doc, const std::vector<std::string>& overrides);

/// Parses and validates a config document. Errors are InvalidInput with a
/// "<source>:<line>: <pointer>: message" prefix.
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {},
                       const std::string& source = "config");
RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides = {});

std::string fnv1a64_hex(const std::string& data);

}  // namespace qctrl::cli
