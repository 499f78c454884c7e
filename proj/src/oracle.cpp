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

#include "qctrl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qctrl/errors.hpp"

namespace qctrl {

namespace {

struct ModeLayout {
  cplx g;
  double omega;
  int dim;
  long long stride;
};

// Sum_k (c_k a_k + c_k^* a_k^dagger) acting on a dense tensor state.
class LadderGenerator {
 public:
  LadderGenerator(std::span<const ModeSpec> modes, const std::vector<int>& shape) {
    long long stride = 1;
    layout_.resize(modes.size());
    for (int k = static_cast<int>(modes.size()) - 1; k >= 0; --k) {
      layout_[k] = {modes[k].g, modes[k].omega, shape[k], stride};
      stride *= shape[k];
    }
    total_ = stride;
    sqrt_n_.resize(*std::max_element(shape.begin(), shape.end()) + 1);
    for (std::size_t n = 0; n < sqrt_n_.size(); ++n) sqrt_n_[n] = std::sqrt(static_cast<double>(n));
  }

  long long dim() const { return total_; }
  std::size_t modes() const { return layout_.size(); }

  /// Coefficients of a_k in V_I(t).
  std::vector<cplx> at(double t) const {
    std::vector<cplx> c(layout_.size());
    for (std::size_t k = 0; k < layout_.size(); ++k) {
      c[k] = layout_[k].g * std::polar(1.0, -layout_[k].omega * t);
    }
    return c;
  }

  void apply(const std::vector<cplx>& c, const StateVector& in, StateVector& out) const {
    out.setZero(in.size());
    for (std::size_t k = 0; k < layout_.size(); ++k) {
      const auto& m = layout_[k];
      const cplx ck = c[k];
      const cplx ck_conj = std::conj(ck);
      for (long long i = 0; i < total_; ++i) {
        const int n = static_cast<int>((i / m.stride) % m.dim);
        if (n + 1 < m.dim) out[i] += ck * sqrt_n_[n + 1] * in[i + m.stride];
        if (n > 0) out[i] += ck_conj * sqrt_n_[n] * in[i - m.stride];
      }
    }
  }

  /// Upper bound on the operator norm of the generator with coefficients c.
  double norm_bound(const std::vector<cplx>& c) const {
    double b = 0.0;
    for (std::size_t k = 0; k < layout_.size(); ++k) {
      b += 2.0 * std::abs(c[k]) * sqrt_n_[layout_[k].dim - 1];
    }
    return b;
  }

  /// psi <- exp(-i h G) psi, Taylor series on norm-controlled substeps.
  void exponentiate(const std::vector<cplx>& c, double h, StateVector& psi) const {
    const int substeps = std::max(1, static_cast<int>(std::ceil(std::abs(h) * norm_bound(c) / 0.5)));
    const double hs = h / substeps;
    StateVector term(psi.size()), next(psi.size());
    for (int s = 0; s < substeps; ++s) {
      term = psi;
      for (int j = 1; j <= 60; ++j) {
        apply(c, term, next);
        term = next * cplx(0.0, -hs / j);
        psi += term;
        if (term.norm() < 1e-17) break;
      }
    }
  }

  /// <0| [G(c2), G(c1)] |0>, evaluated numerically on the vacuum vector. For
  /// linear ladder generators the commutator is a c-number, so this is its
  /// value.
  cplx vacuum_commutator(const std::vector<cplx>& c1, const std::vector<cplx>& c2) const {
    StateVector vac = StateVector::Zero(total_);
    vac[0] = 1.0;
    StateVector x(total_), y(total_);
    apply(c1, vac, x);
    apply(c2, x, y);
    const cplx a21 = y[0];
    apply(c2, vac, x);
    apply(c1, x, y);
    return a21 - y[0];
  }

 private:
  std::vector<ModeLayout> layout_;
  long long total_{1};
  std::vector<double> sqrt_n_;
};

std::vector<int> resolve_dims(std::span<const ModeSpec> modes, const PropagationConfig& cfg) {
  if (modes.empty()) throw InvalidInput("mode list must not be empty");
  std::vector<int> dims = cfg.dims;
  if (dims.empty()) {
    for (const auto& m : modes) dims.push_back(default_dim(m.alpha));
  }
  if (dims.size() != modes.size()) throw InvalidInput("one truncation size per mode required");
  long long total = 1;
  for (int d : dims) {
    if (d < 2) throw InvalidInput("truncation dimension must be >= 2");
    total *= d;
    if (total > kMaxOracleDim) {
      throw InvalidInput("dense tensor dimension exceeds " + std::to_string(kMaxOracleDim));
    }
  }
  return dims;
}

void check_config(const PropagationConfig& cfg) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) throw InvalidInput("propagation dt must be > 0");
  if (!(cfg.t_max >= 0.0) || !std::isfinite(cfg.t_max)) throw InvalidInput("t_max must be >= 0");
  if (!(cfg.tolerance > 0.0)) throw InvalidInput("propagation tolerance must be > 0");
}

}  // namespace

PropagationConfig PropagationConfig::defaults(std::span<const ModeSpec> modes, double t_max) {
  double w_max = 0.0;
  for (const auto& m : modes) w_max = std::max(w_max, m.omega);
  if (!(w_max > 0.0)) throw InvalidInput("mode list must contain a positive frequency");
  PropagationConfig cfg;
  cfg.dt = 2.0 * std::numbers::pi / (w_max * 200.0);
  cfg.t_max = t_max;
  for (const auto& m : modes) cfg.dims.push_back(default_dim(m.alpha));
  return cfg;
}

TruncatedState controller_state(std::span<const ModeSpec> modes, const PropagationConfig& cfg) {
  for (const auto& m : modes) m.validate();
  const auto dims = resolve_dims(modes, cfg);
  TruncatedState state = coherent_state(modes[0].alpha, dims[0]);
  for (std::size_t k = 1; k < modes.size(); ++k) {
    state = tensor(state, coherent_state(modes[k].alpha, dims[k]));
  }
  return state;
}

Trajectory propagate_branch(std::span<const ModeSpec> modes, const TruncatedState& initial,
                            const PropagationConfig& cfg, std::span<const double> sample_times) {
  check_config(cfg);
  for (const auto& m : modes) m.validate();
  if (static_cast<std::size_t>(initial.num_modes()) != modes.size()) {
    throw InvalidInput("initial state must have one tensor factor per mode");
  }
  if (initial.dim() > kMaxOracleDim) {
    throw InvalidInput("dense tensor dimension exceeds " + std::to_string(kMaxOracleDim));
  }
  for (std::size_t i = 0; i < sample_times.size(); ++i) {
    const double s = sample_times[i];
    if (!(s >= 0.0) || s > cfg.t_max * (1.0 + 1e-12) + 1e-300) {
      throw InvalidInput("sample time outside [0, t_max]");
    }
    if (i > 0 && s < sample_times[i - 1]) throw InvalidInput("sample times must be non-decreasing");
  }

  const LadderGenerator gen(modes, initial.shape());
  const double c_lo = 0.5 - std::sqrt(3.0) / 6.0;
  const double c_hi = 0.5 + std::sqrt(3.0) / 6.0;
  const int levels = [&] {
    int m = *std::min_element(initial.shape().begin(), initial.shape().end());
    return std::min(kLeakageLevels, m - 1);
  }();

  Trajectory out;
  out.times.reserve(sample_times.size());
  out.states.reserve(sample_times.size());
  StateVector psi = initial.amplitudes();
  double t = 0.0;
  for (const double target : sample_times) {
    const double gap = target - t;
    const int steps = gap > 0.0 ? static_cast<int>(std::ceil(gap / cfg.dt - 1e-9)) : 0;
    const double h = steps > 0 ? gap / steps : 0.0;
    for (int s = 0; s < steps; ++s) {
      const double t0 = t + s * h;
      if (cfg.integrator == Integrator::Midpoint) {
        gen.exponentiate(gen.at(t0 + 0.5 * h), h, psi);
      } else {
        const auto c1 = gen.at(t0 + c_lo * h);
        const auto c2 = gen.at(t0 + c_hi * h);
        std::vector<cplx> mean(c1.size());
        for (std::size_t k = 0; k < c1.size(); ++k) mean[k] = 0.5 * (c1[k] + c2[k]);
        // Omega = -i h (V1 + V2)/2 - (sqrt3 h^2 / 12) [V2, V1]; the commutator is a c-number.
        const cplx comm = gen.vacuum_commutator(c1, c2);
        gen.exponentiate(mean, h, psi);
        psi *= std::exp(-std::sqrt(3.0) * h * h / 12.0 * comm);
      }
      const TruncatedState probe(psi, initial.shape());
      const double leak = max_leakage(probe, levels);
      if (leak > kTrajectoryLeakageLimit) {
        const double when = t0 + h;
        throw TruncationError("truncation leakage " + std::to_string(leak) + " at t=" +
                                  std::to_string(when) + " exceeds " +
                                  std::to_string(kTrajectoryLeakageLimit),
                              when);
      }
    }
    t = steps > 0 ? target : t;
    out.times.push_back(target);
    out.states.emplace_back(psi, initial.shape());
  }
  return out;
}

NumericDecoherence decoherence_trajectory(std::span<const ModeSpec> modes,
                                          const PropagationConfig& cfg,
                                          std::span<const double> times) {
  check_config(cfg);
  const TruncatedState initial = controller_state(modes, cfg);

  auto run = [&](double dt) {
    PropagationConfig c = cfg;
    c.dt = dt;
    const auto traj = propagate_branch(modes, initial, c, times);
    std::vector<cplx> d(traj.states.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = overlap(initial, traj.states[i]);
    return d;
  };

  NumericDecoherence out;
  out.times.assign(times.begin(), times.end());
  double dt = cfg.dt;
  std::vector<cplx> coarse = run(dt);
  for (int h = 1; h <= cfg.max_halvings; ++h) {
    dt *= 0.5;
    std::vector<cplx> fine = run(dt);
    double change = 0.0;
    for (std::size_t i = 0; i < fine.size(); ++i) change = std::max(change, std::abs(fine[i] - coarse[i]));
    if (change < cfg.tolerance) {
      out.D = std::move(fine);
      out.dt = dt;
      out.halvings = h;
      out.last_change = change;
      return out;
    }
    coarse = std::move(fine);
  }
  throw ConvergenceError("decoherence factor did not converge under step halving (dt=" +
                         std::to_string(dt) + ")");
}

cplx decoherence_factor_numeric(std::span<const ModeSpec> modes, const PropagationConfig& cfg) {
  const double times[] = {cfg.t_max};
  return decoherence_trajectory(modes, cfg, times).D.front();
}

std::array<double, 2> ReducedDensity::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho_, Eigen::EigenvaluesOnly);
  return {es.eigenvalues()[0], es.eigenvalues()[1]};
}

ReducedDensity reduced_density(const QubitState& qubit, cplx D) {
  if (!(std::abs(D) <= 1.0 + 1e-9)) {
    throw InvalidInput("decoherence factor modulus exceeds 1");
  }
  const cplx c0 = qubit.c0();
  const cplx c1 = qubit.c1();
  Eigen::Matrix2cd rho;
  rho(0, 0) = std::norm(c0);
  rho(1, 1) = std::norm(c1);
  rho(1, 0) = c1 * std::conj(c0) * D;
  rho(0, 1) = std::conj(rho(1, 0));
  return ReducedDensity(rho);
}

double overlap_fidelity(const QubitState& qubit, const ReducedDensity& rho, double phi_target) {
  Eigen::Vector2cd target(qubit.c0(), qubit.c1() * std::polar(1.0, phi_target));
  const Eigen::Matrix2cd rho_t = target * target.adjoint();
  return (rho_t * rho.matrix()).trace().real();
}

double fidelity_numeric(const QubitState& qubit, std::span<const ModeSpec> modes,
                        double phi_target, const PropagationConfig& cfg) {
  if (qubit.lambda() == 0.0) return 1.0;
  return overlap_fidelity(qubit, reduced_density(qubit, decoherence_factor_numeric(modes, cfg)),
                          phi_target);
}

}  // namespace qctrl
