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

#include "qctrl/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>

#include "qctrl/errors.hpp"

namespace qctrl::cli {

using nlohmann::json;

std::vector<double> TimeGrid::values() const {
  if (steps == 1) return {t_start};
  std::vector<double> v(steps);
  const double h = (t_end - t_start) / (steps - 1);
  for (int i = 0; i < steps; ++i) v[i] = t_start + i * h;
  v.back() = t_end;
  return v;
}

std::string fnv1a64_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Line index

namespace {

class LineIndexer {
 public:
  explicit LineIndexer(const std::string& text) : s_(text) {}

  std::map<std::string, int> run() {
    skip_ws();
    if (i_ < s_.size()) value("");
    return std::move(index_);
  }

 private:
  void skip_ws() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r')) {
      if (s_[i_] == '\n') ++line_;
      ++i_;
    }
  }

  std::string string_token() {
    std::string out;
    ++i_;  // opening quote
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\' && i_ + 1 < s_.size()) {
        out += s_[i_ + 1];
        i_ += 2;
        continue;
      }
      out += s_[i_++];
    }
    ++i_;
    return out;
  }

  static std::string escape(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }

  void value(const std::string& pointer) {
    skip_ws();
    if (i_ >= s_.size()) return;
    index_.emplace(pointer, line_);
    const char c = s_[i_];
    if (c == '{') {
      ++i_;
      for (;;) {
        skip_ws();
        if (i_ >= s_.size() || s_[i_] == '}') break;
        if (s_[i_] == ',') { ++i_; continue; }
        const std::string key = string_token();
        skip_ws();
        if (i_ < s_.size() && s_[i_] == ':') ++i_;
        value(pointer + "/" + escape(key));
      }
      ++i_;
    } else if (c == '[') {
      ++i_;
      int k = 0;
      for (;;) {
        skip_ws();
        if (i_ >= s_.size() || s_[i_] == ']') break;
        if (s_[i_] == ',') { ++i_; continue; }
        value(pointer + "/" + std::to_string(k++));
      }
      ++i_;
    } else if (c == '"') {
      string_token();
    } else {
      while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != '}' && s_[i_] != ']' &&
             s_[i_] != ' ' && s_[i_] != '\n' && s_[i_] != '\r' && s_[i_] != '\t') {
        ++i_;
      }
    }
  }

  const std::string& s_;
  std::size_t i_{0};
  int line_{1};
  std::map<std::string, int> index_;
};

}  // namespace

std::map<std::string, int> json_line_index(const std::string& text) { return LineIndexer(text).run(); }

// ---------------------------------------------------------------------------
// Overrides

void apply_overrides(json& doc, const std::vector<std::string>& overrides) {
  for (const auto& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw InvalidInput("override '" + ov + "' must have the form key=value");
    }
    const std::string path = ov.substr(0, eq);
    const std::string raw = ov.substr(eq + 1);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;

    json* node = &doc;
    std::stringstream ss(path);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    for (std::size_t k = 0; k < parts.size(); ++k) {
      const bool last = k + 1 == parts.size();
      const std::string& p = parts[k];
      if (node->is_array()) {
        std::size_t idx = 0;
        try {
          idx = std::stoul(p);
        } catch (const std::exception&) {
          throw InvalidInput("override '" + ov + "': '" + p + "' is not an array index");
        }
        if (idx > node->size()) throw InvalidInput("override '" + ov + "': index out of range");
        if (idx == node->size()) node->push_back(json::object());
        node = &(*node)[idx];
      } else {
        if (node->is_null()) *node = json::object();
        if (!node->is_object()) throw InvalidInput("override '" + ov + "' descends into a scalar");
        node = &(*node)[p];
      }
      if (last) *node = value;
    }
  }
}

// ---------------------------------------------------------------------------
// Validation

namespace {

class Validator {
 public:
  Validator(std::map<std::string, int> lines, std::string source)
      : lines_(std::move(lines)), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& pointer, const std::string& msg) const {
    std::string where = source_;
    std::string p = pointer;
    for (;;) {
      auto it = lines_.find(p);
      if (it != lines_.end()) {
        where += ":" + std::to_string(it->second);
        break;
      }
      if (p.empty()) {
        where += ":override";
        break;
      }
      p = p.substr(0, p.rfind('/'));
    }
    throw InvalidInput(where + ": " + (pointer.empty() ? "/" : pointer) + ": " + msg);
  }

  void keys(const json& j, const std::string& ptr, std::initializer_list<const char*> allowed,
            std::initializer_list<const char*> required = {}) const {
    if (!j.is_object()) fail(ptr, "expected an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j.items()) {
      if (!ok.count(k)) fail(ptr + "/" + k, "unknown key '" + k + "'");
    }
    for (const char* r : required) {
      if (!j.contains(r)) fail(ptr, std::string("missing required key '") + r + "'");
    }
  }

  double number(const json& j, const std::string& ptr) const {
    if (!j.is_number()) fail(ptr, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(ptr, "expected a finite number");
    return v;
  }

  // A number, or the string "inf".
  double extended(const json& j, const std::string& ptr) const {
    if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "infinity")) {
      return std::numeric_limits<double>::infinity();
    }
    return number(j, ptr);
  }

  int integer(const json& j, const std::string& ptr) const {
    if (!j.is_number_integer()) fail(ptr, "expected an integer");
    return j.get<int>();
  }

  bool boolean(const json& j, const std::string& ptr) const {
    if (!j.is_boolean()) fail(ptr, "expected true or false");
    return j.get<bool>();
  }

  std::string string(const json& j, const std::string& ptr) const {
    if (!j.is_string()) fail(ptr, "expected a string");
    return j.get<std::string>();
  }

  // 1.5, [re, im] or {"re": .., "im": ..}
  cplx complex(const json& j, const std::string& ptr) const {
    if (j.is_number()) return {number(j, ptr), 0.0};
    if (j.is_array()) {
      if (j.size() != 2) fail(ptr, "complex value must be [re, im]");
      return {number(j[0], ptr + "/0"), number(j[1], ptr + "/1")};
    }
    if (j.is_object()) {
      keys(j, ptr, {"re", "im"});
      return {j.contains("re") ? number(j["re"], ptr + "/re") : 0.0,
              j.contains("im") ? number(j["im"], ptr + "/im") : 0.0};
    }
    fail(ptr, "expected a number, [re, im] or {\"re\", \"im\"}");
  }

  std::vector<double> numbers(const json& j, const std::string& ptr) const {
    if (!j.is_array()) fail(ptr, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], ptr + "/" + std::to_string(i)));
    return out;
  }

  template <typename F>
  auto guarded(const std::string& ptr, F&& f) const {
    try {
      return f();
    } catch (const InvalidInput& e) {
      fail(ptr, e.what());
    }
  }

 private:
  std::map<std::string, int> lines_;
  std::string source_;
};

ModeSpec parse_mode(const Validator& v, const json& j, const std::string& ptr) {
  v.keys(j, ptr, {"g", "omega", "alpha"}, {"g", "omega", "alpha"});
  ModeSpec m;
  m.g = v.complex(j["g"], ptr + "/g");
  m.omega = v.number(j["omega"], ptr + "/omega");
  m.alpha = v.complex(j["alpha"], ptr + "/alpha");
  v.guarded(ptr, [&] { m.validate(); return 0; });
  return m;
}

QubitState parse_qubit(const Validator& v, const json& j, const std::string& ptr) {
  v.keys(j, ptr, {"c0", "c1", "lambda"});
  if (j.contains("lambda")) {
    if (j.contains("c0") || j.contains("c1")) v.fail(ptr, "give either lambda or c0/c1, not both");
    const double lambda = v.number(j["lambda"], ptr + "/lambda");
    if (!(lambda >= 0.0 && lambda <= 0.25)) v.fail(ptr + "/lambda", "lambda must lie in [0, 1/4]");
    // |c0|^2 = (1 + sqrt(1 - 4 lambda)) / 2
    const double p0 = 0.5 * (1.0 + std::sqrt(1.0 - 4.0 * lambda));
    return {cplx(std::sqrt(p0), 0.0), cplx(std::sqrt(1.0 - p0), 0.0)};
  }
  if (!j.contains("c0") || !j.contains("c1")) v.fail(ptr, "qubit needs c0 and c1, or lambda");
  const cplx c0 = v.complex(j["c0"], ptr + "/c0");
  const cplx c1 = v.complex(j["c1"], ptr + "/c1");
  return v.guarded(ptr, [&] { return QubitState(c0, c1); });
}

TimeGrid parse_grid(const Validator& v, const json& j, const std::string& ptr) {
  v.keys(j, ptr, {"t_start", "t_end", "steps"}, {"t_end", "steps"});
  TimeGrid g;
  g.t_start = j.contains("t_start") ? v.number(j["t_start"], ptr + "/t_start") : 0.0;
  g.t_end = v.number(j["t_end"], ptr + "/t_end");
  g.steps = v.integer(j["steps"], ptr + "/steps");
  if (g.t_start < 0.0) v.fail(ptr + "/t_start", "times must be >= 0");
  if (g.t_end == g.t_start) {
    if (g.steps != 1) v.fail(ptr + "/steps", "a zero-length grid must have steps = 1");
  } else {
    if (!(g.t_end > g.t_start)) v.fail(ptr + "/t_end", "grid must be strictly increasing");
    if (g.steps < 2) v.fail(ptr + "/steps", "steps must be >= 2");
  }
  return g;
}

OracleSettings parse_oracle(const Validator& v, const json& j, const std::string& ptr) {
  v.keys(j, ptr, {"dt", "tolerance", "integrator"});
  OracleSettings o;
  if (j.contains("dt")) {
    o.dt = v.number(j["dt"], ptr + "/dt");
    if (!(*o.dt > 0.0)) v.fail(ptr + "/dt", "dt must be > 0");
  }
  if (j.contains("tolerance")) {
    o.tolerance = v.number(j["tolerance"], ptr + "/tolerance");
    if (!(o.tolerance > 0.0)) v.fail(ptr + "/tolerance", "tolerance must be > 0");
  }
  if (j.contains("integrator")) {
    const auto name = v.string(j["integrator"], ptr + "/integrator");
    if (name == "magnus4") o.integrator = Integrator::Magnus4;
    else if (name == "midpoint") o.integrator = Integrator::Midpoint;
    else v.fail(ptr + "/integrator", "integrator must be 'magnus4' or 'midpoint'");
  }
  return o;
}

SpectralSettings parse_spectral(const Validator& v, const json& j, const std::string& ptr) {
  v.keys(j, ptr, {"kind", "gamma", "eta_c", "points", "cutoff", "one_sided", "times", "cutoffs", "rel_tol"},
         {"kind", "times"});
  SpectralSettings s;
  const auto kind = v.string(j["kind"], ptr + "/kind");
  SpectralDensity& d = s.density;
  if (kind == "flat") {
    d.kind = DensityKind::Flat;
    if (!j.contains("gamma")) v.fail(ptr, "flat density needs 'gamma'");
    d.gamma = v.number(j["gamma"], ptr + "/gamma");
  } else if (kind == "ohmic") {
    d.kind = DensityKind::Ohmic;
    if (!j.contains("eta_c")) v.fail(ptr, "ohmic density needs 'eta_c'");
    d.eta_c = v.number(j["eta_c"], ptr + "/eta_c");
  } else if (kind == "tabulated") {
    d.kind = DensityKind::Tabulated;
    if (!j.contains("points") || !j["points"].is_array()) v.fail(ptr, "tabulated density needs 'points'");
    for (std::size_t i = 0; i < j["points"].size(); ++i) {
      const std::string pp = ptr + "/points/" + std::to_string(i);
      const auto pair = v.numbers(j["points"][i], pp);
      if (pair.size() != 2) v.fail(pp, "point must be [omega, weight]");
      d.points.push_back({pair[0], pair[1]});
    }
  } else {
    v.fail(ptr + "/kind", "kind must be 'flat', 'ohmic' or 'tabulated'");
  }
  if (j.contains("cutoff")) d.cutoff = v.extended(j["cutoff"], ptr + "/cutoff");
  if (j.contains("one_sided")) d.one_sided = v.boolean(j["one_sided"], ptr + "/one_sided");
  v.guarded(ptr, [&] { d.validate(); return 0; });

  s.times = v.numbers(j["times"], ptr + "/times");
  if (s.times.empty()) v.fail(ptr + "/times", "at least one time required");
  for (std::size_t i = 0; i < s.times.size(); ++i) {
    if (s.times[i] < 0.0) v.fail(ptr + "/times/" + std::to_string(i), "times must be >= 0");
    if (i > 0 && !(s.times[i] > s.times[i - 1])) {
      v.fail(ptr + "/times/" + std::to_string(i), "times must be strictly increasing");
    }
  }
  if (j.contains("cutoffs")) {
    s.cutoffs = v.numbers(j["cutoffs"], ptr + "/cutoffs");
    if (s.cutoffs.size() < 3) v.fail(ptr + "/cutoffs", "at least 3 cutoffs required");
    for (std::size_t i = 0; i < s.cutoffs.size(); ++i) {
      if (!(s.cutoffs[i] > 0.0) || (i > 0 && !(s.cutoffs[i] > s.cutoffs[i - 1]))) {
        v.fail(ptr + "/cutoffs/" + std::to_string(i), "cutoffs must be positive and strictly increasing");
      }
    }
  } else {
    s.cutoffs = {100.0, 1000.0, 10000.0};
  }
  if (j.contains("rel_tol")) {
    s.rel_tol = v.number(j["rel_tol"], ptr + "/rel_tol");
    if (!(s.rel_tol >= 1e-12 && s.rel_tol <= 1e-3)) v.fail(ptr + "/rel_tol", "rel_tol must lie in [1e-12, 1e-3]");
  }
  return s;
}

BoundsSettings parse_bounds(const Validator& v, const json& j, const std::string& ptr) {
  v.keys(j, ptr, {"t", "dim"}, {"t"});
  BoundsSettings b;
  b.t = v.number(j["t"], ptr + "/t");
  if (b.t < 0.0) v.fail(ptr + "/t", "time must be >= 0");
  if (j.contains("dim")) {
    b.dim = v.integer(j["dim"], ptr + "/dim");
    if (b.dim < 4) v.fail(ptr + "/dim", "dim must be >= 4");
  }
  return b;
}

ControlBudget parse_budget(const Validator& v, const json& j, const std::string& ptr) {
  v.keys(j, ptr, {"E", "T", "phi_target", "lambda", "h"});
  ControlBudget b = default_algorithm_budget();
  if (j.contains("E")) b.E = v.number(j["E"], ptr + "/E");
  if (j.contains("T")) b.T = v.number(j["T"], ptr + "/T");
  if (j.contains("phi_target")) b.phi_target = v.number(j["phi_target"], ptr + "/phi_target");
  if (j.contains("lambda")) b.lambda = v.number(j["lambda"], ptr + "/lambda");
  if (j.contains("h")) b.h = v.number(j["h"], ptr + "/h");
  v.guarded(ptr, [&] { b.validate(); return 0; });
  return b;
}

AlgorithmSettings parse_algorithms(const Validator& v, const json& j, const std::string& ptr) {
  v.keys(j, ptr, {"family", "n_min", "n_max", "threshold_seconds", "prefactor", "shor_log"}, {"family"});
  AlgorithmSettings a;
  a.family = v.guarded(ptr + "/family", [&] { return parse_family(v.string(j["family"], ptr + "/family")); });
  if (j.contains("n_min")) a.n_min = v.integer(j["n_min"], ptr + "/n_min");
  if (j.contains("n_max")) a.n_max = v.integer(j["n_max"], ptr + "/n_max");
  if (a.n_min < 1) v.fail(ptr + "/n_min", "n_min must be >= 1");
  if (a.n_max < a.n_min) v.fail(ptr + "/n_max", "n_max must be >= n_min");
  if (j.contains("threshold_seconds")) {
    a.threshold_seconds = v.extended(j["threshold_seconds"], ptr + "/threshold_seconds");
    if (!(a.threshold_seconds > 0.0)) v.fail(ptr + "/threshold_seconds", "threshold must be > 0");
  }
  if (j.contains("prefactor")) a.prefactor = v.number(j["prefactor"], ptr + "/prefactor");
  if (j.contains("shor_log")) a.shor_log = v.number(j["shor_log"], ptr + "/shor_log");
  AlgorithmModel probe{a.family, a.n_min, a.prefactor, a.shor_log};
  v.guarded(ptr, [&] { probe.validate(); return 0; });
  return a;
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides,
                       const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    int line = 1;
    for (std::size_t i = 0; i < std::min<std::size_t>(e.byte, text.size()); ++i) {
      if (text[i] == '\n') ++line;
    }
    throw InvalidInput(source + ":" + std::to_string(line) + ": malformed JSON: " + e.what());
  }
  apply_overrides(doc, overrides);
  const Validator v(json_line_index(text), source);

  v.keys(doc, "",
         {"schema_version", "modes", "qubit", "time_grid", "truncation", "phi_target", "error_mode",
          "oracle", "spectral", "bounds", "budget", "algorithms", "output"},
         {"schema_version"});
  if (v.integer(doc["schema_version"], "/schema_version") != kSchemaVersion) {
    v.fail("/schema_version", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
  }

  RunConfig cfg;
  if (doc.contains("modes")) {
    if (!doc["modes"].is_array() || doc["modes"].empty()) v.fail("/modes", "expected a non-empty array");
    for (std::size_t i = 0; i < doc["modes"].size(); ++i) {
      cfg.modes.push_back(parse_mode(v, doc["modes"][i], "/modes/" + std::to_string(i)));
    }
  }
  if (doc.contains("qubit")) cfg.qubit = parse_qubit(v, doc["qubit"], "/qubit");
  if (doc.contains("time_grid")) cfg.time_grid = parse_grid(v, doc["time_grid"], "/time_grid");
  if (doc.contains("truncation")) {
    const auto& t = doc["truncation"];
    if (!t.is_array()) v.fail("/truncation", "expected an array of per-mode dimensions");
    if (t.size() != cfg.modes.size()) v.fail("/truncation", "one dimension per mode required");
    for (std::size_t i = 0; i < t.size(); ++i) {
      const int d = v.integer(t[i], "/truncation/" + std::to_string(i));
      if (d < 2) v.fail("/truncation/" + std::to_string(i), "dimension must be >= 2");
      cfg.truncation.push_back(d);
    }
  }
  if (doc.contains("phi_target")) {
    const auto& p = doc["phi_target"];
    if (p.is_string()) {
      if (p.get<std::string>() != "auto") v.fail("/phi_target", "expected a number or \"auto\"");
    } else {
      cfg.phi_target = v.number(p, "/phi_target");
    }
  }
  if (doc.contains("error_mode")) {
    const auto m = v.string(doc["error_mode"], "/error_mode");
    if (m == "exact") cfg.error_mode = ErrorMode::Exact;
    else if (m == "small_variance") cfg.error_mode = ErrorMode::SmallVariance;
    else v.fail("/error_mode", "error_mode must be 'exact' or 'small_variance'");
  }
  if (doc.contains("oracle")) cfg.oracle = parse_oracle(v, doc["oracle"], "/oracle");
  if (doc.contains("spectral")) cfg.spectral = parse_spectral(v, doc["spectral"], "/spectral");
  if (doc.contains("bounds")) cfg.bounds = parse_bounds(v, doc["bounds"], "/bounds");
  if (doc.contains("budget")) cfg.budget = parse_budget(v, doc["budget"], "/budget");
  if (doc.contains("algorithms")) cfg.algorithms = parse_algorithms(v, doc["algorithms"], "/algorithms");
  if (doc.contains("output")) {
    const auto& o = doc["output"];
    v.keys(o, "/output", {"path", "format"});
    if (o.contains("path")) cfg.output.path = v.string(o["path"], "/output/path");
    if (o.contains("format")) {
      cfg.output.format = v.string(o["format"], "/output/format");
      if (cfg.output.format != "csv") v.fail("/output/format", "only 'csv' output is supported");
    }
  }
  cfg.hash = fnv1a64_hex(doc.dump());
  cfg.document = std::move(doc);
  return cfg;
}

RunConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides, path);
}

}  // namespace qctrl::cli
