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

#include <functional>
#include <span>

namespace qctrl {

struct QuadratureResult {
  double value{0.0};
  double error{0.0};  ///< summed |K15 - G7| estimate over the final panels
  int panels{0};
  long evaluations{0};
};

/// Globally adaptive Gauss-Kronrod (7/15) integration of f over the partition
/// given by `breakpoints` (at least two, strictly increasing). The panel with
/// the largest error estimate is bisected until the summed estimate drops
/// below max(abs_tol, rel_tol * |value|). Panels are summed left to right, so
/// the result does not depend on refinement order. Throws ConvergenceError
/// once `max_panels` is exceeded.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints, double rel_tol,
                                    double abs_tol = 0.0, int max_panels = 1'000'000);

}  // namespace qctrl
