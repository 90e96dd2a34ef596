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

#include "wtt/collision.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace wtt {
namespace {

bool same_hamiltonian(const ModelConfig& a, const ModelConfig& b) {
  if (a.n_system_qubits != b.n_system_qubits) return false;
  if (!(a.coupling == b.coupling)) return false;
  if (a.g != b.g) return false;
  if (a.env.kind != b.env.kind || a.env.delta != b.env.delta) return false;
  if (a.env.kind == EnvKind::QutritNonlinear && a.env.epsilon != b.env.epsilon) return false;
  for (Terminal t : a.terminals()) {
    if (a.env.is_attached(t) != b.env.is_attached(t)) return false;
  }
  return true;
}

bool same_protocol(const ModelConfig& a, const ModelConfig& b) {
  if (!same_hamiltonian(a, b)) return false;
  if (a.dt_collision != b.dt_collision || a.sample_dt != b.sample_dt) return false;
  for (Terminal t : a.attached_terminals()) {
    if (a.env.temperature_of(t) != b.env.temperature_of(t)) return false;
  }
  return true;
}

ComplexMatrix ensemble_env_state(const ModelConfig& config, const JointLayout& layout) {
  ComplexMatrix env = identity(1);
  for (Terminal t : layout.env_terminals()) env = kron(env, ancilla_thermal_state(config.env, t));
  return env;
}

// Where a sample lives: collision (0-based) and number of sample steps into it.
struct Probe {
  std::int64_t collision = 0;
  int step = 0;
};

Probe probe_for(std::int64_t index, int per_collision) {
  if (index == 0) return {0, 0};
  const std::int64_t c = (index - 1) / per_collision;
  return {c, static_cast<int>(index - c * per_collision)};
}

enum class ProbeKind { Energy, Current };

// Evaluates per-terminal observables at the requested probes from one run.
std::vector<std::array<double, 3>> evaluate_probes(const ModelConfig& config, const std::vector<Probe>& probes,
                                                   ProbeKind kind,
                                                   std::shared_ptr<const CollisionHamiltonian> cache) {
  SimulationState state = make_state(config, std::move(cache));
  const CollisionHamiltonian& ham = *state.hamiltonian;
  std::vector<std::array<double, 3>> out(probes.size(), std::array<double, 3>{});
  if (probes.empty()) return out;

  std::map<std::int64_t, std::vector<std::size_t>> by_collision;
  for (std::size_t k = 0; k < probes.size(); ++k) by_collision[probes[k].collision].push_back(k);
  const std::int64_t last = by_collision.rbegin()->first;

  const std::vector<Terminal> terminals = config.terminals();
  for (std::int64_t c = 0; c <= last; ++c) {
    const CollisionFrame frame(ham, state.rho_sys, state.env_state);
    auto it = by_collision.find(c);
    if (it != by_collision.end()) {
      std::array<std::optional<CollisionFrame::Prepared>, 3> prepared;
      for (Terminal t : terminals) {
        prepared[index_of(t)] = frame.prepare(kind == ProbeKind::Energy ? ham.energy_observable(t)
                                                                        : ham.current_observable(t));
      }
      for (std::size_t k : it->second) {
        const Eigen::VectorXcd ph = frame.phases(probes[k].step * config.sample_dt);
        for (Terminal t : terminals) out[k][index_of(t)] = prepared[index_of(t)]->at(ph).real();
      }
    }
    if (c < last) {
      state.rho_sys = frame.system_state(config.dt_collision);
      state.time += config.dt_collision;
      ++state.collisions;
    }
  }
  return out;
}

}  // namespace

CollisionHamiltonian::CollisionHamiltonian(const ModelConfig& config)
    : config_(config), layout_(config), h_tot_(build_total_hamiltonian(config)), spectrum_(hermitian_eig(h_tot_)) {
  for (Terminal t : config.terminals()) {
    const ComplexMatrix hx = local_qubit_hamiltonian(config.coupling, t);
    local_h_[index_of(t)] = hx;
    const ComplexMatrix full = layout_.embed(hx, layout_.system_factor(t));
    energy_obs_[index_of(t)] = rotate(full);
    const ComplexMatrix comm = Complex(0.0, 1.0) * (h_tot_ * full - full * h_tot_);
    current_obs_[index_of(t)] = rotate(comm);
  }
}

std::shared_ptr<const CollisionHamiltonian> CollisionHamiltonian::create(const ModelConfig& config) {
  config.validate();
  return std::make_shared<const CollisionHamiltonian>(config);
}

bool CollisionHamiltonian::compatible_with(const ModelConfig& config) const {
  return same_hamiltonian(config_, config);
}

ComplexMatrix CollisionHamiltonian::rotate(const ComplexMatrix& op) const {
  return spectrum_.eigenvectors.adjoint() * op * spectrum_.eigenvectors;
}

const ComplexMatrix& CollisionHamiltonian::energy_observable(Terminal t) const {
  if (layout_.system_factor(t) < 0) throw std::invalid_argument("energy_observable: terminal not present");
  return energy_obs_[index_of(t)];
}

const ComplexMatrix& CollisionHamiltonian::current_observable(Terminal t) const {
  if (layout_.system_factor(t) < 0) throw std::invalid_argument("current_observable: terminal not present");
  return current_obs_[index_of(t)];
}

const std::vector<ComplexMatrix>& CollisionHamiltonian::system_basis() const {
  std::call_once(system_basis_once_, [this] {
    const int d = layout_.system_dim();
    const int e = layout_.env_dim();
    const ComplexMatrix& v = spectrum_.eigenvectors;
    // V^dagger (|b><a| (x) I) V = V_b^dagger V_a with V_a the row block of system state a.
    for (int a = 0; a < d; ++a) {
      for (int b = a; b < d; ++b) {
        system_basis_.push_back(v.middleRows(b * e, e).adjoint() * v.middleRows(a * e, e));
      }
    }
  });
  return system_basis_;
}

const std::vector<ComplexMatrix>& CollisionHamiltonian::qubit_basis(Terminal t) const {
  const int factor = layout_.system_factor(t);
  if (factor < 0) throw std::invalid_argument("qubit_basis: terminal not present");
  std::call_once(qubit_basis_once_[index_of(t)], [this, t, factor] {
    for (int a = 0; a < 2; ++a) {
      for (int b = a; b < 2; ++b) {
        ComplexMatrix unit = ComplexMatrix::Zero(2, 2);
        unit(b, a) = 1.0;
        qubit_basis_[index_of(t)].push_back(rotate(layout_.embed(unit, factor)));
      }
    }
  });
  return qubit_basis_[index_of(t)];
}

CollisionFrame::CollisionFrame(const CollisionHamiltonian& hamiltonian, const ComplexMatrix& rho_sys,
                               const ComplexMatrix& env_state)
    : hamiltonian_(&hamiltonian) {
  const JointLayout& layout = hamiltonian.layout();
  if (rho_sys.rows() != layout.system_dim() || rho_sys.cols() != layout.system_dim()) {
    throw std::invalid_argument("CollisionFrame: system state has the wrong dimension");
  }
  if (env_state.rows() != layout.env_dim() || env_state.cols() != layout.env_dim()) {
    throw std::invalid_argument("CollisionFrame: environment state has the wrong dimension");
  }
  const ComplexMatrix& v = hamiltonian.spectrum().eigenvectors;
  const ComplexMatrix joint = kron(rho_sys, env_state);
  rho_t_ = (v.adjoint() * joint * v).transpose();
}

Complex CollisionFrame::Prepared::at(const Eigen::VectorXcd& phases) const {
  // sum_k p_k sum_l W(l, k) conj(p_l)
  return phases.transpose() * (weights_.transpose() * phases.conjugate());
}

CollisionFrame::Prepared CollisionFrame::prepare(const ComplexMatrix& observable_eigenbasis) const {
  Prepared p;
  p.weights_ = rho_t_.cwiseProduct(observable_eigenbasis);
  return p;
}

Eigen::VectorXcd CollisionFrame::phases(double tau) const {
  const RealVector& lambda = hamiltonian_->spectrum().eigenvalues;
  Eigen::VectorXcd p(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) p(k) = std::exp(Complex(0.0, -lambda(k) * tau));
  return p;
}

Complex CollisionFrame::expectation(const ComplexMatrix& observable_eigenbasis, double tau) const {
  return prepare(observable_eigenbasis).at(phases(tau));
}

ComplexMatrix CollisionFrame::reduced(const std::vector<ComplexMatrix>& basis, int dim, double tau) const {
  const Eigen::VectorXcd p = phases(tau);
  const Eigen::VectorXcd cp = p.conjugate();
  ComplexMatrix out(dim, dim);
  std::size_t k = 0;
  for (int a = 0; a < dim; ++a) {
    for (int b = a; b < dim; ++b, ++k) {
      const Complex v = p.transpose() * (rho_t_.cwiseProduct(basis[k]).transpose() * cp);
      out(a, b) = v;
      if (a != b) out(b, a) = std::conj(v);
    }
    out(a, a) = Complex(out(a, a).real(), 0.0);
  }
  return out;
}

ComplexMatrix CollisionFrame::system_state(double tau) const {
  return reduced(hamiltonian_->system_basis(), hamiltonian_->layout().system_dim(), tau);
}

ComplexMatrix CollisionFrame::qubit_state(Terminal t, double tau) const {
  return reduced(hamiltonian_->qubit_basis(t), 2, tau);
}

ComplexMatrix CollisionFrame::joint_state(double tau) const {
  const ComplexMatrix& v = hamiltonian_->spectrum().eigenvectors;
  const Eigen::VectorXcd p = phases(tau);
  const ComplexMatrix evolved = p.asDiagonal() * rho_t_.transpose() * p.conjugate().asDiagonal();
  return v * evolved * v.adjoint();
}

ComplexMatrix initial_state(int n) {
  if (n < 1 || n > 16) throw std::invalid_argument("initial_state: qubit count out of range");
  const int d = 1 << n;
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  rho(0, 0) = 1.0;
  return rho;
}

SimulationState make_state(const ModelConfig& config, std::shared_ptr<const CollisionHamiltonian> cache,
                           std::optional<ComplexMatrix> rho_sys) {
  config.validate();
  if (cache) {
    if (!cache->compatible_with(config)) {
      throw std::invalid_argument("make_state: spectral cache was built for a different Hamiltonian");
    }
  } else {
    cache = std::make_shared<const CollisionHamiltonian>(config);
  }
  SimulationState s;
  s.config = config;
  s.env_state = ensemble_env_state(config, cache->layout());
  s.hamiltonian = std::move(cache);
  if (rho_sys) {
    const int d = s.hamiltonian->layout().system_dim();
    if (rho_sys->rows() != d || rho_sys->cols() != d) {
      throw std::invalid_argument("make_state: initial system state has the wrong dimension");
    }
    if (hermitian_defect(*rho_sys) > kHermitianTol) {
      throw std::invalid_argument("make_state: initial system state is not Hermitian");
    }
    s.rho_sys = *rho_sys;
  } else {
    s.rho_sys = initial_state(config.n_system_qubits);
  }
  return s;
}

std::vector<CollisionSample> step_collision(SimulationState& state, const ModelConfig& config) {
  if (!state.hamiltonian) throw std::invalid_argument("step_collision: state has no spectral cache");
  if (!same_protocol(state.config, config) || !state.hamiltonian->compatible_with(config)) {
    throw std::invalid_argument("step_collision: configuration does not match the state's cache");
  }
  const CollisionHamiltonian& ham = *state.hamiltonian;
  const CollisionFrame frame(ham, state.rho_sys, state.env_state);
  const int per = config.samples_per_collision();
  const std::vector<Terminal> terminals = config.terminals();

  std::array<std::optional<CollisionFrame::Prepared>, 3> energy;
  std::array<std::optional<CollisionFrame::Prepared>, 3> current;
  for (Terminal t : terminals) {
    energy[index_of(t)] = frame.prepare(ham.energy_observable(t));
    current[index_of(t)] = frame.prepare(ham.current_observable(t));
  }

  std::vector<CollisionSample> samples;
  samples.reserve(per);
  for (int j = 1; j <= per; ++j) {
    const double tau = j == per ? config.dt_collision : j * config.sample_dt;
    CollisionSample s;
    s.tau = tau;
    s.time = state.time + tau;
    s.system_state = frame.system_state(tau);
    const Eigen::VectorXcd ph = frame.phases(tau);
    for (Terminal t : terminals) {
      s.energies[index_of(t)] = energy[index_of(t)]->at(ph).real();
      s.commutator_currents[index_of(t)] = current[index_of(t)]->at(ph).real();
    }
    samples.push_back(std::move(s));
  }
  state.rho_sys = samples.back().system_state;
  state.time += config.dt_collision;
  ++state.collisions;
  return samples;
}

void advance(SimulationState& state, std::int64_t count) {
  for (std::int64_t c = 0; c < count; ++c) {
    const CollisionFrame frame(*state.hamiltonian, state.rho_sys, state.env_state);
    state.rho_sys = frame.system_state(state.config.dt_collision);
    state.time += state.config.dt_collision;
    ++state.collisions;
  }
}

std::int64_t sample_index(const ModelConfig& config, double t) {
  const double q = t / config.sample_dt;
  const auto i = static_cast<std::int64_t>(std::llround(q));
  if (i < 0 || std::abs(q - static_cast<double>(i)) > 1e-7) {
    std::ostringstream msg;
    msg << "time " << t << " is not a non-negative multiple of sample_dt = " << config.sample_dt;
    throw std::invalid_argument(msg.str());
  }
  return i;
}

namespace {

// Five-point stencil on a uniformly sampled series: central when both sides
// are available, forward otherwise.
double stencil_derivative(const std::vector<double>& e, std::int64_t i, int m, double h) {
  if (i >= 2 * m) {
    return (e[i - 2 * m] - 8.0 * e[i - m] + 8.0 * e[i + m] - e[i + 2 * m]) / (12.0 * h);
  }
  return (-25.0 * e[i] + 48.0 * e[i + m] - 36.0 * e[i + 2 * m] + 16.0 * e[i + 3 * m] - 3.0 * e[i + 4 * m]) /
         (12.0 * h);
}

// Sample indices the stencil at index i reads.
void stencil_support(std::int64_t i, int m, std::vector<std::int64_t>& out) {
  if (i >= 2 * m) {
    for (int k = -2; k <= 2; ++k) out.push_back(i + k * m);
  } else {
    for (int k = 0; k <= 4; ++k) out.push_back(i + k * m);
  }
}

}  // namespace

Trajectory evolve(const ModelConfig& config, double t_max, std::shared_ptr<const CollisionHamiltonian> cache) {
  config.validate();
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("evolve: t_max must be >= 0");
  const double q = t_max / config.dt_collision;
  const auto n_coll = static_cast<std::int64_t>(std::llround(q));
  if (std::abs(q - static_cast<double>(n_coll)) > 1e-9 * std::max(1.0, q)) {
    throw std::invalid_argument("evolve: t_max must be a multiple of dt_collision");
  }
  const int per = config.samples_per_collision();
  const int m = config.samples_per_current_step();
  const std::int64_t last_index = n_coll * per;
  const bool stencil = config.current_method == CurrentMethod::TimeStencil;

  // The time stencil reads up to two steps past t_max; the right-limit
  // commutator current at t_max needs the following collision.
  std::int64_t run_coll = n_coll;
  if (stencil) {
    run_coll = (last_index + 2 * m + per - 1) / per;
  } else if (config.boundary == BoundarySide::Right) {
    run_coll = n_coll + 1;
  }

  SimulationState state = make_state(config, std::move(cache));
  const std::vector<Terminal> terminals = config.terminals();
  const JointLayout& layout = state.hamiltonian->layout();
  std::vector<int> dims(layout.dims().begin(), layout.dims().begin() + layout.system_factor_count());

  Trajectory tr;
  tr.terminals = terminals;
  std::vector<std::array<double, 3>> all_energies;
  std::vector<std::array<double, 3>> comm_currents;
  std::vector<std::array<double, 3>> right_limit(n_coll + 1, std::array<double, 3>{});

  auto record = [&](double time, const ComplexMatrix& rho, std::int64_t coll, const std::array<double, 3>& cur) {
    std::array<ComplexMatrix, 3> qs;
    std::array<double, 3> en{};
    for (Terminal t : terminals) {
      const int keep = layout.system_factor(t);
      qs[index_of(t)] = partial_trace(rho, dims, std::span<const int>(&keep, 1));
      en[index_of(t)] = (qs[index_of(t)] * state.hamiltonian->local_hamiltonian(t)).trace().real();
    }
    all_energies.push_back(en);
    comm_currents.push_back(cur);
    if (static_cast<std::int64_t>(tr.times.size()) <= last_index) {
      tr.times.push_back(time);
      tr.system_states.push_back(rho);
      tr.qubit_states.push_back(std::move(qs));
      tr.collision_index.push_back(coll);
    }
  };

  {
    // Commutator current in the initial product state.
    const CollisionFrame frame(*state.hamiltonian, state.rho_sys, state.env_state);
    std::array<double, 3> cur{};
    for (Terminal t : terminals) {
      cur[index_of(t)] = frame.expectation(state.hamiltonian->current_observable(t), 0.0).real();
    }
    record(0.0, state.rho_sys, 0, cur);
  }
  for (std::int64_t c = 0; c < run_coll; ++c) {
    if (c >= 1 && c <= n_coll) {
      const CollisionFrame frame(*state.hamiltonian, state.rho_sys, state.env_state);
      for (Terminal t : terminals) {
        right_limit[c][index_of(t)] =
            frame.expectation(state.hamiltonian->current_observable(t), 0.0).real();
      }
    }
    for (const CollisionSample& s : step_collision(state, config)) {
      record(s.time, s.system_state, c + 1, s.commutator_currents);
    }
  }

  tr.energies.assign(all_energies.begin(), all_energies.begin() + (last_index + 1));
  tr.currents.resize(last_index + 1);
  std::vector<std::vector<double>> series(3);
  if (stencil) {
    for (Terminal t : terminals) {
      series[index_of(t)].reserve(all_energies.size());
      for (const auto& e : all_energies) series[index_of(t)].push_back(e[index_of(t)]);
    }
  }
  for (std::int64_t i = 0; i <= last_index; ++i) {
    for (Terminal t : terminals) {
      double j = 0.0;
      if (stencil) {
        j = stencil_derivative(series[index_of(t)], i, m, config.current_h);
      } else if (config.boundary == BoundarySide::Right && i > 0 && i % per == 0) {
        j = right_limit[i / per][index_of(t)];
      } else {
        j = comm_currents[i][index_of(t)];
      }
      tr.currents[i][index_of(t)] = j;
    }
  }
  return tr;
}

double local_heat_current(const ComplexMatrix& joint_state, const ComplexMatrix& h_tot, Terminal terminal,
                          const ModelConfig& config) {
  const JointLayout layout(config);
  if (joint_state.rows() != layout.dim() || h_tot.rows() != layout.dim()) {
    throw std::invalid_argument("local_heat_current: joint state does not match the configured layout");
  }
  const int factor = layout.system_factor(terminal);
  if (factor < 0) throw std::invalid_argument("local_heat_current: terminal not present");
  const ComplexMatrix rho_dot = Complex(0.0, -1.0) * (h_tot * joint_state - joint_state * h_tot);
  const ComplexMatrix rho_dot_x = partial_trace(rho_dot, layout.dims(), std::span<const int>(&factor, 1));
  const Complex j = (rho_dot_x * local_qubit_hamiltonian(config.coupling, terminal)).trace();
  if (std::abs(j.imag()) > 1e-10) {
    std::ostringstream msg;
    msg << "local_heat_current: imaginary residue " << j.imag();
    throw std::runtime_error(msg.str());
  }
  return j.real();
}

std::vector<std::array<double, 3>> local_energies_at(const ModelConfig& config,
                                                     std::span<const std::int64_t> indices,
                                                     std::shared_ptr<const CollisionHamiltonian> cache) {
  config.validate();
  const int per = config.samples_per_collision();
  std::vector<Probe> probes;
  probes.reserve(indices.size());
  for (std::int64_t i : indices) {
    if (i < 0) throw std::invalid_argument("local_energies_at: negative sample index");
    probes.push_back(probe_for(i, per));
  }
  return evaluate_probes(config, probes, ProbeKind::Energy, std::move(cache));
}

std::vector<std::array<double, 3>> currents_at(const ModelConfig& config, std::span<const double> times,
                                               std::shared_ptr<const CollisionHamiltonian> cache) {
  config.validate();
  const int per = config.samples_per_collision();
  const int m = config.samples_per_current_step();
  std::vector<std::int64_t> idx;
  idx.reserve(times.size());
  for (double t : times) idx.push_back(sample_index(config, t));

  std::vector<std::array<double, 3>> out(times.size(), std::array<double, 3>{});
  const std::vector<Terminal> terminals = config.terminals();
  if (config.current_method == CurrentMethod::TimeStencil) {
    std::vector<std::int64_t> support;
    for (std::int64_t i : idx) stencil_support(i, m, support);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    const auto energies = local_energies_at(config, support, std::move(cache));
    // Scatter into a dense series over the support range so the stencil can index it.
    const std::int64_t hi = support.back();
    std::array<std::vector<double>, 3> series;
    for (auto& s : series) s.assign(hi + 1, 0.0);
    for (std::size_t k = 0; k < support.size(); ++k) {
      for (Terminal t : terminals) series[index_of(t)][support[k]] = energies[k][index_of(t)];
    }
    for (std::size_t k = 0; k < idx.size(); ++k) {
      for (Terminal t : terminals) {
        out[k][index_of(t)] = stencil_derivative(series[index_of(t)], idx[k], m, config.current_h);
      }
    }
    return out;
  }

  std::vector<Probe> probes;
  for (std::int64_t i : idx) {
    if (config.boundary == BoundarySide::Right && i > 0 && i % per == 0) {
      probes.push_back({i / per, 0});
    } else {
      probes.push_back(probe_for(i, per));
    }
  }
  return evaluate_probes(config, probes, ProbeKind::Current, std::move(cache));
}

}  // namespace wtt
