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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qctrl {

using cplx = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Top-of-basis weight above which a truncated state is not trusted.
inline constexpr double kLeakageThreshold = 1e-10;
/// Number of top levels inspected by the default leakage certificate.
inline constexpr int kLeakageLevels = 3;

enum class LeakagePolicy { Enforce, Report };

// Amplitudes over a finite Fock basis. A multi-mode state is stored as a
// dense tensor product, row-major in mode order: the last mode varies
// fastest. The amplitude vector is always normalized.
class TruncatedState {
 public:
  /// Wraps an already-normalized amplitude vector; throws InvalidInput if
  /// the norm deviates from one by more than 1e-9 or any mode has dim < 2.
  explicit TruncatedState(StateVector amplitudes, std::vector<int> shape = {});

  /// Rescales `amplitudes` to unit norm before wrapping.
  static TruncatedState normalized(StateVector amplitudes, std::vector<int> shape = {});

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  int num_modes() const { return static_cast<int>(shape_.size()); }
  const std::vector<int>& shape() const { return shape_; }
  const StateVector& amplitudes() const { return amplitudes_; }
  cplx operator[](int n) const { return amplitudes_[n]; }
  double norm_squared() const { return amplitudes_.squaredNorm(); }

 private:
  StateVector amplitudes_;
  std::vector<int> shape_;
};

struct Ladder {
  OperatorMatrix a;
  OperatorMatrix a_dagger;
};

/// Truncation size used when none is given: ceil(|a|^2 + 8 sqrt(|a|^2+1)) + 8.
int default_dim(cplx alpha);

/// Smallest admissible size, ceil(|a|^2 + 8 sqrt(|a|^2+1)).
int minimum_dim(cplx alpha);

/// Truncated, renormalized coherent state |alpha>. With LeakagePolicy::Enforce
/// a TruncationError is raised unless leakage(result, 3) < 1e-10.
TruncatedState coherent_state(cplx alpha, int dim,
                              LeakagePolicy policy = LeakagePolicy::Enforce);

TruncatedState vacuum(int dim);

Ladder ladder(int dim);
OperatorMatrix number_operator(int dim);
/// x = (a + a^dagger)/sqrt(2)
OperatorMatrix position_operator(int dim);
/// p = -i(a - a^dagger)/sqrt(2)
OperatorMatrix momentum_operator(int dim);

cplx expectation(const OperatorMatrix& op, const TruncatedState& state);
/// <X^2> - <X>^2 for Hermitian X, evaluated as ||X psi||^2 - <X>^2.
double variance(const OperatorMatrix& op, const TruncatedState& state);

/// Probability weight in the top `k` levels of a single-mode state.
double leakage(const TruncatedState& state, int k);
/// Same, for the marginal distribution of one mode of a tensor state.
double mode_leakage(const TruncatedState& state, int mode, int k);
/// Largest per-mode leakage.
double max_leakage(const TruncatedState& state, int k);

TruncatedState tensor(const TruncatedState& first, const TruncatedState& second);
cplx overlap(const TruncatedState& bra, const TruncatedState& ket);

bool is_hermitian(const OperatorMatrix& op, double tol = 1e-10);

}  // namespace qctrl
