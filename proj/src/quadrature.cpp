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

#include "qctrl/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "qctrl/errors.hpp"

namespace qctrl {

namespace {

// Kronrod abscissae on [0,1]; odd indices are the embedded Gauss points.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrod = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGauss = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double k = kKronrod[7] * fc;
  double g = kGauss[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double x = h * kNodes[i];
    const double s = f(c - x) + f(c + x);
    k += kKronrod[i] * s;
    if (i % 2 == 1) g += kGauss[i / 2] * s;
  }
  return {a, b, k * h, std::abs((k - g) * h)};
}

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints, double rel_tol,
                                    double abs_tol, int max_panels) {
  if (breakpoints.size() < 2) throw InvalidInput("quadrature needs at least two breakpoints");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > breakpoints[i - 1])) {
      throw InvalidInput("quadrature breakpoints must be strictly increasing");
    }
  }
  std::priority_queue<Panel, std::vector<Panel>, ByError> heap;
  double total = 0.0;
  double error = 0.0;
  long evals = 0;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    const Panel p = gk15(f, breakpoints[i - 1], breakpoints[i]);
    evals += 15;
    total += p.value;
    error += p.error;
    heap.push(p);
  }
  while (error > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (static_cast<int>(heap.size()) >= max_panels) {
      throw ConvergenceError("adaptive quadrature exceeded " + std::to_string(max_panels) +
                             " panels (error estimate " + std::to_string(error) + ")");
    }
    const Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gk15(f, worst.a, mid);
    const Panel right = gk15(f, mid, worst.b);
    evals += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    if (!std::isfinite(total)) throw ConvergenceError("adaptive quadrature produced a non-finite sum");
  }

  std::vector<Panel> panels;
  panels.reserve(heap.size());
  while (!heap.empty()) {
    panels.push_back(heap.top());
    heap.pop();
  }
  std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  QuadratureResult r;
  for (const auto& p : panels) {
    r.value += p.value;
    r.error += p.error;
  }
  r.panels = static_cast<int>(panels.size());
  r.evaluations = evals;
  return r;
}

}  // namespace qctrl
