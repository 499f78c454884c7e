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

#include <string>
#include <string_view>

#include "qctrl/config.hpp"

namespace qctrl::cli {

struct CommandResult {
  std::string output;  ///< CSV text, metadata first
  int exit_code{0};
  std::string diagnostic;  ///< for the error stream when exit_code != 0
};

CommandResult cmd_fidelity_scan(const RunConfig& cfg);
CommandResult cmd_oracle_check(const RunConfig& cfg);
CommandResult cmd_spectral(const RunConfig& cfg);
CommandResult cmd_bounds(const RunConfig& cfg);
CommandResult cmd_algorithms(const RunConfig& cfg);

/// Dispatches by subcommand name; throws InvalidInput for an unknown name.
CommandResult run_command(std::string_view name, const RunConfig& cfg);

}  // namespace qctrl::cli
