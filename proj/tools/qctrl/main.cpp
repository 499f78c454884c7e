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


// qctrl <fidelity-scan|oracle-check|spectral|bounds|algorithms> --config <path>
//       [--out <path>] [--override key=value ...]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qctrl/commands.hpp"
#include "qctrl/config.hpp"
#include "qctrl/errors.hpp"

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitInternal = 3;

int write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return 0;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "qctrl: cannot open output file '" << path << "'\n";
    return kExitInvalid;
  }
  out << text;
  return out ? 0 : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Controller-induced decoherence toolkit", "qctrl"};
  app.set_version_flag("--version", qctrl::cli::kToolVersion);
  app.require_subcommand(1, 1);

  std::string config_path;
  std::string out_path;
  std::vector<std::string> overrides;
  const std::vector<std::pair<const char*, const char*>> commands = {
      {"fidelity-scan", "closed-form F(t), D(t) and error over a time grid"},
      {"oracle-check", "closed form against truncated-Fock propagation"},
      {"spectral", "continuum phase variance and cutoff divergence"},
      {"bounds", "uncertainty relations, DPO algebra and error floor"},
      {"algorithms", "minimum total runtime per algorithm family"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON config file")->required();
    sub->add_option("--out", out_path, "output CSV path (default: config output.path or stdout)");
    sub->add_option("--override", overrides, "dotted.key=value, repeatable")->take_all();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const auto cfg = qctrl::cli::load_config(config_path, overrides);
    const auto result = qctrl::cli::run_command(command, cfg);
    const int written = write_output(out_path.empty() ? cfg.output.path : out_path, result.output);
    if (written != 0) return written;
    if (!result.diagnostic.empty()) std::cerr << "qctrl " << command << ": " << result.diagnostic << '\n';
    return result.exit_code;
  } catch (const qctrl::TruncationError& e) {
    std::cerr << "qctrl " << command << ": truncation failure at t=" << e.time() << ": " << e.what() << '\n';
    return kExitNumerical;
  } catch (const qctrl::InvalidInput& e) {
    std::cerr << "qctrl " << command << ": invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const qctrl::NumericalError& e) {
    std::cerr << "qctrl " << command << ": numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "qctrl " << command << ": internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}
