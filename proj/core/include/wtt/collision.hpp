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

// Repeated-interaction dynamics. Every collision starts from
// rho_sys (x) rho_env, evolves under the fixed H_tot for dt_collision and
// discards the ancillas. All expectation values are taken in the eigenbasis of
// H_tot, where a sample at intra-collision time tau costs O(N^2):
//
//   Tr(rho(tau) O) = sum_kl rho'_kl O'_lk exp(-i (l_k - l_l) tau),
//
// with rho' = V^dagger rho(0) V and O' = V^dagger O V.

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "wtt/linalg.hpp"
#include "wtt/model.hpp"

namespace wtt {

/// Read-only spectral data of H_tot plus observables rotated into its
/// eigenbasis. Temperatures do not enter, so one instance serves every
/// stencil point of a temperature derivative. Safe to share between threads.
class CollisionHamiltonian {
 public:
  explicit CollisionHamiltonian(const ModelConfig& config);
  CollisionHamiltonian(const CollisionHamiltonian&) = delete;
  CollisionHamiltonian& operator=(const CollisionHamiltonian&) = delete;

  static std::shared_ptr<const CollisionHamiltonian> create(const ModelConfig& config);

  /// True when `config` has the same H_tot and joint layout.
  bool compatible_with(const ModelConfig& config) const;

  const JointLayout& layout() const { return layout_; }
  const ComplexMatrix& matrix() const { return h_tot_; }
  const HermitianSpectrum& spectrum() const { return spectrum_; }

  /// V^dagger (H_X (x) I) V. Terminal must be present.
  const ComplexMatrix& energy_observable(Terminal t) const;
  /// V^dagger i[H_tot, H_X (x) I] V, whose expectation is the commutator current.
  const ComplexMatrix& current_observable(Terminal t) const;
  /// V^dagger (|b><a| (x) I_env) V for a <= b in row-major order over the
  /// system space; built on first use.
  const std::vector<ComplexMatrix>& system_basis() const;
  /// Same for the 2x2 marginal of one qubit: entries (0,0), (0,1), (1,1).
  const std::vector<ComplexMatrix>& qubit_basis(Terminal t) const;

  /// Local qubit Hamiltonians H_X in the 2x2 qubit space.
  const ComplexMatrix& local_hamiltonian(Terminal t) const { return local_h_[index_of(t)]; }

 private:
  ComplexMatrix rotate(const ComplexMatrix& op) const;

  ModelConfig config_;
  JointLayout layout_;
  ComplexMatrix h_tot_;
  HermitianSpectrum spectrum_;
  std::array<ComplexMatrix, 3> local_h_;
  std::array<ComplexMatrix, 3> energy_obs_;
  std::array<ComplexMatrix, 3> current_obs_;

  mutable std::once_flag system_basis_once_;
  mutable std::vector<ComplexMatrix> system_basis_;
  mutable std::array<std::once_flag, 3> qubit_basis_once_;
  mutable std::array<std::vector<ComplexMatrix>, 3> qubit_basis_;
};

/// One collision seen from the eigenbasis of H_tot.
class CollisionFrame {
 public:
  /// `rho_sys` must be Hermitian; it need not be positive or normalized, which
  /// lets linear-map tabulation push traceless operators through a collision.
  CollisionFrame(const CollisionHamiltonian& hamiltonian, const ComplexMatrix& rho_sys,
                 const ComplexMatrix& env_state);

  /// Observable pre-multiplied with the frame state; cheap to evaluate at many tau.
  class Prepared {
   public:
    Complex at(const Eigen::VectorXcd& phases) const;

   private:
    friend class CollisionFrame;
    ComplexMatrix weights_;
  };

  Prepared prepare(const ComplexMatrix& observable_eigenbasis) const;
  /// exp(-i lambda_k tau) for every eigenvalue.
  Eigen::VectorXcd phases(double tau) const;

  /// Tr(rho(tau) O) for O given in the eigenbasis. Real part only for Hermitian O.
  Complex expectation(const ComplexMatrix& observable_eigenbasis, double tau) const;
  ComplexMatrix system_state(double tau) const;
  ComplexMatrix qubit_state(Terminal t, double tau) const;
  /// Full joint density matrix; O(N^3), intended for tests.
  ComplexMatrix joint_state(double tau) const;

 private:
  ComplexMatrix reduced(const std::vector<ComplexMatrix>& basis, int dim, double tau) const;

  const CollisionHamiltonian* hamiltonian_;
  /// Transposed rotated state: rho_t_(l, k) = (V^dagger rho V)(k, l).
  ComplexMatrix rho_t_;
};

/// |0...0><0...0| on n qubits.
ComplexMatrix initial_state(int n);

struct SimulationState {
  ModelConfig config;
  std::shared_ptr<const CollisionHamiltonian> hamiltonian;
  /// Product of fresh ancilla thermal states in layout order.
  ComplexMatrix env_state;
  ComplexMatrix rho_sys;
  double time = 0.0;
  std::int64_t collisions = 0;
};

/// Validates `config`, builds (or reuses) the spectral cache and the ancilla
/// states. Throws std::invalid_argument if a supplied cache does not match.
SimulationState make_state(const ModelConfig& config,
                           std::shared_ptr<const CollisionHamiltonian> cache = nullptr,
                           std::optional<ComplexMatrix> rho_sys = std::nullopt);

struct CollisionSample {
  double time = 0.0;
  double tau = 0.0;
  ComplexMatrix system_state;
  std::array<double, 3> energies{};
  std::array<double, 3> commutator_currents{};
};

/// Runs one collision, returning samples at tau = sample_dt, ..., dt_collision.
/// Throws std::invalid_argument when `config` differs from the state's cache.
std::vector<CollisionSample> step_collision(SimulationState& state, const ModelConfig& config);

/// Advances `count` collisions without sampling.
void advance(SimulationState& state, std::int64_t count);

struct Trajectory {
  std::vector<Terminal> terminals;
  std::vector<double> times;
  std::vector<ComplexMatrix> system_states;
  /// Per terminal (indexed by index_of); absent terminals hold empty matrices.
  std::vector<std::array<ComplexMatrix, 3>> qubit_states;
  std::vector<std::array<double, 3>> energies;
  std::vector<std::array<double, 3>> currents;
  /// 0 for the initial sample, k >= 1 for samples inside collision k.
  std::vector<std::int64_t> collision_index;

  std::size_t size() const { return times.size(); }
};

/// Samples [0, t_max] every sample_dt. t_max must be a non-negative multiple of
/// dt_collision. Currents follow config.current_method and config.boundary.
Trajectory evolve(const ModelConfig& config, double t_max,
                  std::shared_ptr<const CollisionHamiltonian> cache = nullptr);

/// Instantaneous J_X = Tr(rho_dot_X H_X) with rho_dot = -i[H_tot, rho] on the
/// full joint state. Throws std::runtime_error if the imaginary residue exceeds 1e-10.
double local_heat_current(const ComplexMatrix& joint_state, const ComplexMatrix& h_tot, Terminal terminal,
                          const ModelConfig& config);

/// Maps a time to its sample index; throws if it is not a multiple of sample_dt.
std::int64_t sample_index(const ModelConfig& config, double t);

/// Local energies <H_X>(t) at the given sample indices from a single run.
/// Result rows follow the order of `indices`.
std::vector<std::array<double, 3>> local_energies_at(const ModelConfig& config,
                                                     std::span<const std::int64_t> indices,
                                                     std::shared_ptr<const CollisionHamiltonian> cache = nullptr);

/// Heat currents J_X(t) at the given times from a single run, honoring
/// config.current_method and config.boundary.
std::vector<std::array<double, 3>> currents_at(const ModelConfig& config, std::span<const double> times,
                                               std::shared_ptr<const CollisionHamiltonian> cache = nullptr);

}  // namespace wtt
