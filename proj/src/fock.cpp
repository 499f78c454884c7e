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

#include "qctrl/fock.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "qctrl/errors.hpp"

namespace qctrl {

namespace {

void require_dim(int dim) {
  if (dim < 2) {
    throw InvalidInput("truncation dimension must be >= 2, got " + std::to_string(dim));
  }
}

std::vector<int> resolve_shape(const StateVector& amplitudes, std::vector<int> shape) {
  if (shape.empty()) shape.push_back(static_cast<int>(amplitudes.size()));
  long long product = 1;
  for (int d : shape) {
    require_dim(d);
    product *= d;
  }
  if (product != amplitudes.size()) {
    throw InvalidInput("state shape does not match amplitude count");
  }
  return shape;
}

}  // namespace

TruncatedState::TruncatedState(StateVector amplitudes, std::vector<int> shape)
    : amplitudes_(std::move(amplitudes)), shape_(resolve_shape(amplitudes_, std::move(shape))) {
  const double n2 = amplitudes_.squaredNorm();
  if (!std::isfinite(n2) || std::abs(n2 - 1.0) > 1e-9) {
    throw InvalidInput("state is not normalized (norm^2 = " + std::to_string(n2) + ")");
  }
}

TruncatedState TruncatedState::normalized(StateVector amplitudes, std::vector<int> shape) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidInput("cannot normalize a zero or non-finite vector");
  amplitudes /= n;
  return TruncatedState(std::move(amplitudes), std::move(shape));
}

int minimum_dim(cplx alpha) {
  const double n = std::norm(alpha);
  return static_cast<int>(std::ceil(n + 8.0 * std::sqrt(n + 1.0)));
}

int default_dim(cplx alpha) { return minimum_dim(alpha) + 8; }

TruncatedState coherent_state(cplx alpha, int dim, LeakagePolicy policy) {
  require_dim(dim);
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
    throw InvalidInput("coherent amplitude must be finite");
  }
  StateVector amps(dim);
  // amp_n = amp_{n-1} * alpha / sqrt(n); avoids n! overflow.
  amps[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < dim; ++n) amps[n] = amps[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  auto state = TruncatedState::normalized(std::move(amps));
  if (policy == LeakagePolicy::Enforce) {
    const int k = std::min(kLeakageLevels, dim - 1);
    const double leak = leakage(state, k);
    if (!(leak < kLeakageThreshold)) {
      throw TruncationError("coherent state |alpha|=" + std::to_string(std::abs(alpha)) +
                            " needs more than " + std::to_string(dim) +
                            " levels (leakage " + std::to_string(leak) + ")");
    }
  }
  return state;
}

TruncatedState vacuum(int dim) {
  require_dim(dim);
  StateVector amps = StateVector::Zero(dim);
  amps[0] = 1.0;
  return TruncatedState(std::move(amps));
}

Ladder ladder(int dim) {
  require_dim(dim);
  OperatorMatrix a = OperatorMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  OperatorMatrix ad = a.adjoint();
  return {std::move(a), std::move(ad)};
}

OperatorMatrix number_operator(int dim) {
  require_dim(dim);
  OperatorMatrix n = OperatorMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) n(k, k) = static_cast<double>(k);
  return n;
}

OperatorMatrix position_operator(int dim) {
  auto [a, ad] = ladder(dim);
  return (a + ad) / std::sqrt(2.0);
}

OperatorMatrix momentum_operator(int dim) {
  auto [a, ad] = ladder(dim);
  return cplx(0.0, -1.0) * (a - ad) / std::sqrt(2.0);
}

cplx expectation(const OperatorMatrix& op, const TruncatedState& state) {
  if (op.rows() != state.dim() || op.cols() != state.dim()) {
    throw InvalidInput("operator/state dimension mismatch");
  }
  return state.amplitudes().dot(op * state.amplitudes());
}

double variance(const OperatorMatrix& op, const TruncatedState& state) {
  if (op.rows() != state.dim() || op.cols() != state.dim()) {
    throw InvalidInput("operator/state dimension mismatch");
  }
  const StateVector x = op * state.amplitudes();
  const double mean = state.amplitudes().dot(x).real();
  return std::max(0.0, x.squaredNorm() - mean * mean);
}

double mode_leakage(const TruncatedState& state, int mode, int k) {
  if (mode < 0 || mode >= state.num_modes()) throw InvalidInput("mode index out of range");
  const auto& shape = state.shape();
  const int d = shape[mode];
  if (k < 1 || k >= d) {
    throw InvalidInput("leakage level count must satisfy 1 <= k < dim");
  }
  long long stride = 1;
  for (int m = state.num_modes() - 1; m > mode; --m) stride *= shape[m];
  double weight = 0.0;
  const auto& amps = state.amplitudes();
  for (long long i = 0; i < amps.size(); ++i) {
    const int n = static_cast<int>((i / stride) % d);
    if (n >= d - k) weight += std::norm(amps[i]);
  }
  return weight;
}

double leakage(const TruncatedState& state, int k) { return mode_leakage(state, 0, k); }

double max_leakage(const TruncatedState& state, int k) {
  double worst = 0.0;
  for (int m = 0; m < state.num_modes(); ++m) worst = std::max(worst, mode_leakage(state, m, k));
  return worst;
}

TruncatedState tensor(const TruncatedState& first, const TruncatedState& second) {
  const auto& a = first.amplitudes();
  const auto& b = second.amplitudes();
  StateVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
  std::vector<int> shape = first.shape();
  shape.insert(shape.end(), second.shape().begin(), second.shape().end());
  return TruncatedState::normalized(std::move(out), std::move(shape));
}

cplx overlap(const TruncatedState& bra, const TruncatedState& ket) {
  if (bra.dim() != ket.dim()) throw InvalidInput("overlap of states with different dimensions");
  return bra.amplitudes().dot(ket.amplitudes());
}

bool is_hermitian(const OperatorMatrix& op, double tol) {
  return op.rows() == op.cols() && (op - op.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace qctrl
