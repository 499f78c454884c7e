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
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qctrl/commands.hpp"
#include "qctrl/config.hpp"
#include "qctrl/csv.hpp"
#include "qctrl/errors.hpp"

using namespace qctrl;
using namespace qctrl::cli;

namespace {

struct Table {
  std::vector<std::string> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

Table parse(const std::string& csv) {
  Table t;
  std::stringstream ss(csv);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.rfind("# ", 0) == 0) {
      t.meta.push_back(line.substr(2));
    } else if (t.header.empty()) {
      t.header = split(line);
    } else {
      t.rows.push_back(split(line));
    }
  }
  return t;
}

std::string meta_value(const Table& t, const std::string& key) {
  for (const auto& m : t.meta) {
    if (m.rfind(key + ": ", 0) == 0) return m.substr(key.size() + 2);
  }
  return {};
}

int column(const Table& t, const std::string& name) {
  for (std::size_t i = 0; i < t.header.size(); ++i) {
    if (t.header[i] == name) return static_cast<int>(i);
  }
  FAIL("missing column " << name);
  return -1;
}

const char* kScan = R"({
  "schema_version": 1,
  "modes": [{"g": 0.1, "omega": 1.0, "alpha": 1.5}],
  "qubit": {"lambda": 0.25},
  "time_grid": {"t_start": 0.0, "t_end": 12.566370614359172, "steps": 11}
})";

}  // namespace

TEST_CASE("number_formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("fnv1a_reference_vectors") {
  CHECK(fnv1a64_hex("") == "cbf29ce484222325");
  CHECK(fnv1a64_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("csv_table_checks_row_width") {
  CsvTable t;
  t.header({"a", "b"});
  CHECK_THROWS(t.row({"1"}));
  t.row({"1", "2"});
  CHECK(t.str() == "a,b\n1,2\n");
}

TEST_CASE("parallel_for_rethrows_lowest_index") {
  setenv("QCTRL_THREADS", "4", 1);
  CHECK(worker_count() == 4);
  try {
    parallel_for(100, [](std::size_t i) {
      if (i == 17 || i == 80) throw InvalidInput("index " + std::to_string(i));
    });
    FAIL("expected an exception");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()) == "index 17");
  }
  const auto squares = parallel_map<int>(50, [](std::size_t i) { return static_cast<int>(i * i); });
  for (int i = 0; i < 50; ++i) CHECK(squares[i] == i * i);
  setenv("QCTRL_THREADS", "junk", 1);
  CHECK(worker_count() >= 1);
  unsetenv("QCTRL_THREADS");
}

TEST_CASE("config_parses_and_hashes") {
  const auto a = parse_config(kScan);
  CHECK(a.modes.size() == 1);
  CHECK(a.qubit->lambda() == doctest::Approx(0.25));
  CHECK(a.time_grid->values().size() == 11);
  CHECK_FALSE(a.phi_target.has_value());
  CHECK(a.hash.size() == 16);
  // key order and whitespace do not matter, values do
  const auto b = parse_config(
      R"({"time_grid": {"steps": 11, "t_end": 12.566370614359172, "t_start": 0.0}, "qubit": {"lambda": 0.25},
          "modes": [{"alpha": 1.5, "omega": 1.0, "g": 0.1}], "schema_version": 1})");
  CHECK(a.hash == b.hash);
  CHECK(parse_config(kScan, {"modes.0.g=0.2"}).hash != a.hash);
}

TEST_CASE("config_errors_carry_line_and_pointer") {
  const std::string text = "{\n  \"schema_version\": 1,\n  \"modes\": [\n    {\"g\": 0.1, \"omega\": 0, \"alpha\": 1}\n  ]\n}\n";
  try {
    parse_config(text, {}, "scan.json");
    FAIL("expected invalid input");
  } catch (const InvalidInput& e) {
    const std::string msg = e.what();
    CHECK(msg.find("scan.json:4: /modes/0") == 0);
  }
}

TEST_CASE("config_rejections") {
  CHECK_THROWS_AS(parse_config("{"), InvalidInput);
  CHECK_THROWS_AS(parse_config(R"({"schema_version": 2})"), InvalidInput);
  CHECK_THROWS_AS(parse_config(R"({"modes": []})"), InvalidInput);
  CHECK_THROWS_AS(parse_config(R"({"schema_version": 1, "extra": 1})"), InvalidInput);
  CHECK_THROWS_AS(parse_config(kScan, {"time_grid.steps=1"}), InvalidInput);
  CHECK_THROWS_AS(parse_config(kScan, {"time_grid.t_end=-1"}), InvalidInput);
  CHECK_THROWS_AS(parse_config(kScan, {"qubit.c0=1"}), InvalidInput);
  CHECK_THROWS_AS(parse_config(kScan, {"phi_target=\"soon\""}), InvalidInput);
  CHECK_THROWS_AS(parse_config(kScan, {"modes.0.typo=1"}), InvalidInput);
  CHECK_THROWS_AS(parse_config(kScan, {"noequals"}), InvalidInput);
  CHECK_THROWS_AS(parse_config(kScan, {"truncation=[40, 40]"}), InvalidInput);
  CHECK(parse_config(kScan, {"time_grid.t_end=0", "time_grid.steps=1"}).time_grid->values().size() == 1);
  CHECK(*parse_config(kScan, {"phi_target=0.5"}).phi_target == 0.5);
}

TEST_CASE("complex_values_in_config") {
  const auto cfg = parse_config(kScan, {"modes.0.alpha=[0.0, 1.5]", R"(modes.0.g={"re": 0.1, "im": 0.2})"});
  CHECK(cfg.modes[0].alpha == cplx(0.0, 1.5));
  CHECK(cfg.modes[0].g == cplx(0.1, 0.2));
}

TEST_CASE("fidelity_scan_revivals_and_metadata") {
  const auto cfg = parse_config(kScan);
  const auto out = cmd_fidelity_scan(cfg);
  CHECK(out.exit_code == 0);
  const auto t = parse(out.output);
  CHECK(meta_value(t, "qctrl") == kToolVersion);
  CHECK(meta_value(t, "config_hash") == "fnv1a64:" + cfg.hash);
  CHECK(t.header == std::vector<std::string>{"t", "phase_mean", "phase_variance", "xi", "abs_D", "arg_D",
                                             "fidelity", "epsilon"});
  REQUIRE(t.rows.size() == 11);
  const int f = column(t, "fidelity");
  CHECK(std::stod(t.rows[5][f]) == doctest::Approx(1.0).epsilon(1e-12));   // t = 2 pi
  CHECK(std::stod(t.rows[10][f]) == doctest::Approx(1.0).epsilon(1e-12));  // t = 4 pi
}

TEST_CASE("fidelity_scan_uncoupled_is_constant") {
  const auto t = parse(cmd_fidelity_scan(parse_config(kScan, {"modes.0.g=0"})).output);
  for (const auto& row : t.rows) CHECK(row[column(t, "fidelity")] == "1");
}

TEST_CASE("fidelity_scan_two_modes_is_product") {
  const auto cfg = parse_config(kScan, {R"(modes=[{"g": 0.1, "omega": 1.0, "alpha": 1.5},
                                              {"g": 0.05, "omega": 0.7, "alpha": [0.2, 0.5]}])",
                                        "phi_target=0.3"});
  const auto t = parse(cmd_fidelity_scan(cfg).output);
  for (const auto& row : t.rows) {
    const double time = std::stod(row[0]);
    cplx d = 1.0;
    for (const auto& m : cfg.modes) d *= decoherence_factor(std::vector<ModeSpec>{m}, time).D;
    CHECK(std::stod(row[column(t, "fidelity")]) == doctest::Approx(fidelity_from_factor(0.25, d, 0.3)).epsilon(1e-12));
  }
}

TEST_CASE("oracle_check_outcomes") {
  const auto pass = cmd_oracle_check(parse_config(kScan, {"truncation=[40]"}));
  CHECK(pass.exit_code == 0);
  CHECK(meta_value(parse(pass.output), "result") == "pass");

  const auto trivial = cmd_oracle_check(parse_config(kScan, {"time_grid.t_end=0", "time_grid.steps=1"}));
  CHECK(trivial.exit_code == 0);
  CHECK(parse(trivial.output).rows.size() == 1);

  CHECK_THROWS_AS(cmd_oracle_check(parse_config(kScan, {"truncation=[6]"})), TruncationError);
  const auto three = parse_config(kScan, {R"(modes=[{"g":0.1,"omega":1,"alpha":1},{"g":0.1,"omega":1,"alpha":1},
                                                    {"g":0.1,"omega":1,"alpha":1}])"});
  CHECK_THROWS_AS(cmd_oracle_check(three), InvalidInput);
}

TEST_CASE("spectral_command_rows") {
  const auto flat = parse_config(R"({"schema_version": 1,
      "spectral": {"kind": "flat", "gamma": 0.1, "times": [0.5, 1, 2, 3, 4]}})");
  const auto t = parse(cmd_spectral(flat).output);
  CHECK(t.rows.size() == 5);
  CHECK(std::stod(meta_value(t, "flat_slope")) == doctest::Approx(2.513).epsilon(0.01));
  CHECK(meta_value(t, "slope_check").rfind("pass", 0) == 0);
  CHECK_FALSE(meta_value(t, "flagged_discrepancy").empty());

  const auto zero = parse(cmd_spectral(parse_config(R"({"schema_version": 1,
      "spectral": {"kind": "ohmic", "eta_c": 0.05, "cutoff": 100, "times": [0]}})")).output);
  REQUIRE(zero.rows.size() == 1);
  CHECK(zero.rows[0][1] == "0");

  const auto ohmic = parse(cmd_spectral(parse_config(R"({"schema_version": 1,
      "spectral": {"kind": "ohmic", "eta_c": 0.05, "cutoff": "inf", "times": [0.5, 1, 2]}})")).output);
  for (const auto& row : ohmic.rows) {
    CHECK(row[1] == "inf");
    CHECK(row[2] == "divergent");
    CHECK(row[3] == "1");
  }
}

TEST_CASE("bounds_command_report") {
  const auto cfg = parse_config(R"({"schema_version": 1,
      "modes": [{"g": 0.1, "omega": 1.0, "alpha": 2.0}],
      "bounds": {"t": 1.5707963267948966, "dim": 40},
      "budget": {"phi_target": 3.141592653589793}})");
  const auto out = cmd_bounds(cfg);
  CHECK(out.exit_code == 0);
  const auto t = parse(out.output);
  bool seen = false;
  for (const auto& row : t.rows) {
    if (row[0] == "number_phase") {
      seen = true;
      CHECK(std::abs(std::stod(row[1]) - 0.14142) < 1e-5);
      CHECK(std::abs(std::stod(row[2]) - 0.05) < 1e-7);
    }
    if (row[0] == "robertson_xp") CHECK(std::stod(row[1]) == doctest::Approx(0.5).epsilon(1e-8));
    if (row[0] == "epsilon_lower_bound") CHECK(std::abs(std::stod(row[2]) - 2.708e-37) < 1e-40);
    CHECK(row[4] == "1");
  }
  CHECK(seen);

  const auto revival = parse(cmd_bounds(parse_config(R"({"schema_version": 1,
      "modes": [{"g": 0.1, "omega": 1.0, "alpha": 2.0}], "bounds": {"t": 0}})")).output);
  for (const auto& row : revival.rows) {
    if (row[0].rfind("dpo_", 0) == 0) CHECK(row[2] == "0");
  }
}

TEST_CASE("algorithms_command_rows") {
  const auto general = parse(cmd_algorithms(parse_config(R"({"schema_version": 1,
      "algorithms": {"family": "general", "n_min": 1, "n_max": 60}})")).output);
  CHECK(general.rows.size() == 60);
  CHECK(meta_value(general, "crossover_n") == "40");
  CHECK(general.rows[38][5] == "0");
  CHECK(general.rows[39][5] == "1");

  const auto grover = parse(cmd_algorithms(parse_config(R"({"schema_version": 1,
      "algorithms": {"family": "grover", "n_min": 40, "n_max": 40}})")).output);
  REQUIRE(grover.rows.size() == 1);
  CHECK(std::stod(grover.rows[0][3]) == doctest::Approx(5.6e-16).epsilon(0.01));
}

TEST_CASE("unknown_subcommand") {
  CHECK_THROWS_AS(run_command("plot", parse_config(kScan)), InvalidInput);
}
