// Copyright 2026 The wtt Authors
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

#include "wtt/nonmarkov.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "wtt/parallel.hpp"

namespace wtt {
namespace {

constexpr double kPi = std::numbers::pi;

std::int64_t collision_count(const ModelConfig& config, double t_max) {
  if (!(t_max >= 0.0)) throw std::invalid_argument("t_max must be >= 0");
  const double q = t_max / config.dt_collision;
  const auto n = static_cast<std::int64_t>(std::llround(q));
  if (std::abs(q - static_cast<double>(n)) > 1e-9 * std::max(1.0, q)) {
    throw std::invalid_argument("t_max must be a multiple of dt_collision");
  }
  return n;
}

// System operator with `probe` on the probed qubit and |0><0| on the others.
ComplexMatrix embed_probe(const ModelConfig& config, Terminal terminal, const ComplexMatrix& probe) {
  ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  ComplexMatrix out = identity(1);
  for (Terminal t : config.terminals()) out = kron(out, t == terminal ? probe : zero);
  return out;
}

std::vector<ComplexMatrix> marginal_series(const ModelConfig& config, Terminal terminal, const ComplexMatrix& rho0,
                                           double t_max, std::vector<double>* times,
                                           std::shared_ptr<const CollisionHamiltonian> cache) {
  if (!config.has_terminal(terminal)) throw std::invalid_argument("probed terminal is not present");
  const std::int64_t n_coll = collision_count(config, t_max);
  SimulationState state = make_state(config, std::move(cache), rho0);
  const int per = config.samples_per_collision();
  const JointLayout& layout = state.hamiltonian->layout();
  const std::vector<int> dims(layout.dims().begin(), layout.dims().begin() + layout.system_factor_count());
  const int keep = layout.system_factor(terminal);

  std::vector<ComplexMatrix> out;
  out.reserve(n_coll * per + 1);
  out.push_back(partial_trace(rho0, dims, std::span<const int>(&keep, 1)));
  if (times) times->assign(1, 0.0);
  for (std::int64_t c = 0; c < n_coll; ++c) {
    const CollisionFrame frame(*state.hamiltonian, state.rho_sys, state.env_state);
    for (int j = 1; j <= per; ++j) {
      const double tau = j == per ? config.dt_collision : j * config.sample_dt;
      out.push_back(frame.qubit_state(terminal, tau));
      if (times) times->push_back(state.time + tau);
    }
    state.rho_sys = frame.system_state(config.dt_collision);
    state.time += config.dt_collision;
  }
  return out;
}

Eigen::Vector3d bloch_of(const ComplexMatrix& m) {
  // Tr(m sigma_j) for j = x, y, z.
  return Eigen::Vector3d(2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real());
}

}  // namespace

Eigen::Vector3d BlochState::vector() const {
  return Eigen::Vector3d(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
}

ComplexMatrix BlochState::density() const {
  const Eigen::Vector3d a = vector();
  ComplexMatrix rho(2, 2);
  rho(0, 0) = 0.5 * (1.0 + a.z());
  rho(1, 1) = 0.5 * (1.0 - a.z());
  rho(0, 1) = 0.5 * Complex(a.x(), -a.y());
  rho(1, 0) = 0.5 * Complex(a.x(), a.y());
  return rho;
}

BlochState BlochState::antipode() const {
  double p = phi + kPi;
  if (p >= 2.0 * kPi) p -= 2.0 * kPi;
  return BlochState{kPi - theta, p};
}

QubitDynamicalMap QubitDynamicalMap::tabulate(const ModelConfig& config, Terminal terminal, double t_max,
                                              std::shared_ptr<const CollisionHamiltonian> cache) {
  config.validate();
  if (!cache) cache = CollisionHamiltonian::create(config);
  const SpinOps& ops = SpinOps::get();
  ComplexMatrix sy = ComplexMatrix::Zero(2, 2);
  sy(0, 1) = Complex(0.0, -1.0);
  sy(1, 0) = Complex(0.0, 1.0);
  const std::array<ComplexMatrix, 4> inputs{0.5 * identity(2), 0.5 * ops.sx_half, 0.5 * sy, 0.5 * ops.sz_half};

  QubitDynamicalMap map;
  std::array<std::vector<ComplexMatrix>, 4> series;
  for (int k = 0; k < 4; ++k) {
    series[k] = marginal_series(config, terminal, embed_probe(config, terminal, inputs[k]), t_max,
                                k == 0 ? &map.times_ : nullptr, cache);
  }
  const std::size_t n = series[0].size();
  map.linear_.resize(n);
  map.offset_.resize(n);
  for (std::size_t s = 0; s < n; ++s) {
    map.offset_[s] = bloch_of(series[0][s]);
    for (int i = 0; i < 3; ++i) map.linear_[s].col(i) = bloch_of(series[i + 1][s]);
  }
  return map;
}

ComplexMatrix QubitDynamicalMap::apply(std::size_t k, const BlochState& initial) const {
  const Eigen::Vector3d b = offset_.at(k) + linear_.at(k) * initial.vector();
  ComplexMatrix rho(2, 2);
  rho(0, 0) = 0.5 * (1.0 + b.z());
  rho(1, 1) = 0.5 * (1.0 - b.z());
  rho(0, 1) = 0.5 * Complex(b.x(), -b.y());
  rho(1, 0) = 0.5 * Complex(b.x(), b.y());
  return rho;
}

double QubitDynamicalMap::distance(std::size_t k, const BlochPair& pair) const {
  return 0.5 * (linear_.at(k) * (pair.first.vector() - pair.second.vector())).norm();
}

std::vector<double> QubitDynamicalMap::distance_series(const BlochPair& pair) const {
  const Eigen::Vector3d diff = pair.first.vector() - pair.second.vector();
  std::vector<double> out(times_.size());
  for (std::size_t k = 0; k < times_.size(); ++k) out[k] = 0.5 * (linear_[k] * diff).norm();
  return out;
}

std::vector<ComplexMatrix> qubit_reduced_dynamics(const ModelConfig& config, Terminal terminal,
                                                  const BlochState& initial, double t_max) {
  config.validate();
  return marginal_series(config, terminal, embed_probe(config, terminal, initial.density()), t_max, nullptr,
                         nullptr);
}

std::vector<double> distance_series(const ModelConfig& config, Terminal terminal, const BlochPair& pair,
                                    double t_max) {
  config.validate();
  const auto cache = CollisionHamiltonian::create(config);
  const auto a = marginal_series(config, terminal, embed_probe(config, terminal, pair.first.density()), t_max,
                                 nullptr, cache);
  const auto b = marginal_series(config, terminal, embed_probe(config, terminal, pair.second.density()), t_max,
                                 nullptr, cache);
  std::vector<double> out(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = trace_distance(a[k], b[k]);
  return out;
}

double positive_increment_sum(const std::vector<double>& series, double floor) {
  double sum = 0.0;
  for (std::size_t k = 1; k < series.size(); ++k) {
    const double inc = series[k] - series[k - 1];
    if (inc > floor) sum += inc;
  }
  return sum;
}

std::vector<std::array<double, 2>> growth_windows(const std::vector<double>& times, const std::vector<double>& series,
                                                  double floor) {
  std::vector<std::array<double, 2>> out;
  bool open = false;
  for (std::size_t k = 1; k < series.size(); ++k) {
    if (series[k] - series[k - 1] > floor) {
      if (open) {
        out.back()[1] = times[k];
      } else {
        out.push_back({times[k - 1], times[k]});
        open = true;
      }
    } else {
      open = false;
    }
  }
  return out;
}

BLPResult blp_measure(const ModelConfig& config, Terminal terminal, double t_max, const SearchConfig& search) {
  if (search.theta_points < 2 || search.phi_points < 1) {
    throw std::invalid_argument("blp_measure: search grid needs theta_points >= 2 and phi_points >= 1");
  }
  if (!(search.angular_tolerance > 0.0)) throw std::invalid_argument("blp_measure: angular_tolerance must be > 0");
  const QubitDynamicalMap map = QubitDynamicalMap::tabulate(config, terminal, t_max);

  const int dof = search.general_pairs ? 4 : 2;
  auto pair_of = [&](const std::vector<double>& x) {
    const BlochState s{x[0], x[1]};
    return dof == 2 ? BlochPair{s, s.antipode()} : BlochPair{s, BlochState{x[2], x[3]}};
  };
  auto objective = [&](const std::vector<double>& x) {
    return positive_increment_sum(map.distance_series(pair_of(x)), search.increment_floor);
  };

  // Coarse grid. General pairs use half the resolution per state.
  const int nt = search.general_pairs ? std::max(2, search.theta_points / 2) : search.theta_points;
  const int np = search.general_pairs ? std::max(1, search.phi_points / 2) : search.phi_points;
  const double dtheta = kPi / (nt - 1);
  const double dphi = 2.0 * kPi / np;
  const std::size_t per_state = static_cast<std::size_t>(nt) * np;
  const std::size_t total = dof == 2 ? per_state : per_state * per_state;
  auto point = [&](std::size_t idx) {
    std::vector<double> x;
    std::size_t rest = idx;
    std::vector<std::size_t> states;
    for (int s = 0; s < dof / 2; ++s) {
      states.insert(states.begin(), rest % per_state);
      rest /= per_state;
    }
    for (std::size_t st : states) {
      x.push_back(static_cast<double>(st / np) * dtheta);
      x.push_back(static_cast<double>(st % np) * dphi);
    }
    return x;
  };
  std::vector<double> values(total);
  parallel_for(total, search.workers, [&](std::size_t i) { values[i] = objective(point(i)); });

  // Index order is theta-major, so the first strict maximum wins ties.
  std::size_t best_idx = 0;
  for (std::size_t i = 1; i < total; ++i) {
    if (values[i] > values[best_idx] + 1e-12) best_idx = i;
  }
  std::vector<double> x = point(best_idx);
  double best = values[best_idx];

  // Coordinate descent with a shrinking step.
  double step = dtheta;
  while (step >= search.angular_tolerance) {
    bool improved = false;
    for (int d = 0; d < dof; ++d) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> cand = x;
        cand[d] += sign * step;
        if (d % 2 == 0) {
          cand[d] = std::clamp(cand[d], 0.0, kPi);
        } else {
          cand[d] = std::fmod(cand[d] + 2.0 * kPi, 2.0 * kPi);
        }
        const double v = objective(cand);
        if (v > best + 1e-15) {
          best = v;
          x = std::move(cand);
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }

  BLPResult r;
  r.terminal = terminal;
  r.optimal_pair = pair_of(x);
  r.times = map.times();
  r.distance_series = map.distance_series(r.optimal_pair);
  r.value = positive_increment_sum(r.distance_series, search.increment_floor);
  r.growth_windows = growth_windows(r.times, r.distance_series, search.increment_floor);
  return r;
}

}  // namespace wtt
