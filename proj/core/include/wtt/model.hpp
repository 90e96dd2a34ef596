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

// Hamiltonians and configuration of the three-qubit working substance and its
// collisional environments. Natural units throughout: hbar = k_B = 1, time in
// units of t~ and temperature in units of T~ = hbar / (k_B t~).

#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "wtt/linalg.hpp"

namespace wtt {

enum class Terminal : int { L = 0, M = 1, R = 2 };

inline constexpr std::array<Terminal, 3> kAllTerminals{Terminal::L, Terminal::M, Terminal::R};

inline constexpr int index_of(Terminal t) { return static_cast<int>(t); }
std::string_view to_string(Terminal t);
/// Accepts "L", "M", "R" (case-insensitive). Throws std::invalid_argument.
Terminal terminal_from_string(std::string_view s);

/// Pauli matrices for spin-1/2 and the spin-1 "Pauli" pair used by the qutrit ancillas.
struct SpinOps {
  ComplexMatrix sx_half;
  ComplexMatrix sz_half;
  ComplexMatrix sx_one;
  ComplexMatrix sz_one;

  static const SpinOps& get();
};

/// Qubit splittings omega_i and pairwise sigma_z sigma_z couplings omega_ij.
struct CouplingConfig {
  double omega_L = 3.0;
  double omega_M = 3.0;
  double omega_R = 3.0;
  double omega_ML = 3.0;
  double omega_MR = 3.0;
  double omega_LR = 0.0;

  /// All omega_i = omega_ML = omega_MR = delta, omega_LR = 0.
  static CouplingConfig baseline(double delta = 3.0);
  /// omega_ML = omega_MR = omega_LR = delta.
  static CouplingConfig symmetric(double delta = 3.0);
  /// omega_ML = delta, omega_MR = delta + skew, omega_LR = delta - skew.
  static CouplingConfig asymmetric(double delta = 3.0, double skew = 0.1);
  /// Two-qubit device: omega_L = 1, omega_R = 2, omega_LR = lr_coupling.
  static CouplingConfig two_qubit(double lr_coupling = 5.0);

  double omega(Terminal t) const;
  bool operator==(const CouplingConfig&) const = default;
};

enum class EnvKind { QutritLinear, QutritNonlinear, Qubit };

std::string_view to_string(EnvKind k);
EnvKind env_kind_from_string(std::string_view s);

/// One stream of identical ancillas per terminal.
struct EnvSpec {
  EnvKind kind = EnvKind::QutritLinear;
  double delta = 3.0;
  /// Shift of the middle qutrit level; < 0 transmon-like, > 0 Kerr-like.
  /// Ignored unless kind == QutritNonlinear.
  double epsilon = 0.0;
  std::array<double, 3> temperature{4.0, 10.0, 10.0};
  std::array<bool, 3> attached{true, true, true};

  int ancilla_dim() const { return kind == EnvKind::Qubit ? 2 : 3; }
  double temperature_of(Terminal t) const { return temperature[index_of(t)]; }
  double& temperature_of(Terminal t) { return temperature[index_of(t)]; }
  bool is_attached(Terminal t) const { return attached[index_of(t)]; }
};

enum class CurrentMethod {
  /// Five-point stencil in time on E_X(t) = Tr(rho_X H_X) along the sampled trajectory.
  TimeStencil,
  /// Instantaneous Tr(-i Tr_{~X}[H_tot, rho] H_X) on the joint collision state.
  Commutator,
};

/// Which side of a collision boundary t = k dt the commutator current reports.
enum class BoundarySide { Left, Right };

std::string_view to_string(CurrentMethod m);
CurrentMethod current_method_from_string(std::string_view s);
std::string_view to_string(BoundarySide b);
BoundarySide boundary_side_from_string(std::string_view s);

struct ModelConfig {
  CouplingConfig coupling;
  EnvSpec env;
  /// System-ancilla coupling strength.
  double g = 4.0;
  /// Duration of one collision.
  double dt_collision = 0.5;
  /// Sampling step inside a collision; must divide dt_collision.
  double sample_dt = 0.01;
  /// Half-step of the temperature stencil.
  double stencil_h = 0.05;
  /// 3 = L, M, R; 2 = L, R only.
  int n_system_qubits = 3;
  CurrentMethod current_method = CurrentMethod::TimeStencil;
  /// Step of the time stencil; must be a multiple of sample_dt.
  double current_h = 0.05;
  BoundarySide boundary = BoundarySide::Left;

  /// System qubits present, in tensor order.
  std::vector<Terminal> terminals() const;
  bool has_terminal(Terminal t) const;
  /// Terminals whose ancilla stream takes part in the dynamics.
  std::vector<Terminal> attached_terminals() const;

  int samples_per_collision() const;
  int samples_per_current_step() const;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Canonical tensor ordering (L_sys, M_sys, R_sys, L_env, M_env, R_env) with
/// absent qubits and detached ancillas omitted.
class JointLayout {
 public:
  explicit JointLayout(const ModelConfig& config);

  const std::vector<int>& dims() const { return dims_; }
  int dim() const { return dim_; }
  int system_dim() const { return system_dim_; }
  int env_dim() const { return dim_ / system_dim_; }
  int system_factor_count() const { return static_cast<int>(system_terminals_.size()); }
  const std::vector<Terminal>& system_terminals() const { return system_terminals_; }
  const std::vector<Terminal>& env_terminals() const { return env_terminals_; }

  /// Tensor factor of the system qubit, or -1 when absent.
  int system_factor(Terminal t) const { return system_factor_[index_of(t)]; }
  /// Tensor factor of the ancilla, or -1 when detached.
  int env_factor(Terminal t) const { return env_factor_[index_of(t)]; }

  /// Embeds a local operator on one factor into the full joint space.
  ComplexMatrix embed(const ComplexMatrix& op, int factor) const;
  /// Same embedding restricted to the system factors only.
  ComplexMatrix embed_system(const ComplexMatrix& op, int factor) const;

 private:
  std::vector<int> dims_;
  int dim_ = 1;
  int system_dim_ = 1;
  std::vector<Terminal> system_terminals_;
  std::vector<Terminal> env_terminals_;
  std::array<int, 3> system_factor_{-1, -1, -1};
  std::array<int, 3> env_factor_{-1, -1, -1};
};

/// H_sys = -sum_i (omega_i/2) sz^i - sum_{i<j} (omega_ij/2) sz^i sz^j on 2^n dims.
ComplexMatrix build_system_hamiltonian(const CouplingConfig& coupling, int n);

/// Single-ancilla Hamiltonian: -delta diag(1,0,-1), -diag(delta, eps, -delta) or -delta diag(1,-1).
ComplexMatrix build_env_local_hamiltonian(const EnvSpec& env);

/// Local qubit Hamiltonian H_X = -(omega_X / 2) sz.
ComplexMatrix local_qubit_hamiltonian(const CouplingConfig& coupling, Terminal t);

/// -g sum_{attached X} sx^(X) (x) sx^(X),env on the full joint space of `layout`.
ComplexMatrix build_interaction_hamiltonian(double g, const EnvSpec& env, const JointLayout& layout);

/// H_sys (x) I + sum_{attached} I (x) H_env^(X) (x) I + H_int.
ComplexMatrix build_total_hamiltonian(const ModelConfig& config);

/// exp(-H_env / T) / Z for the ancilla of terminal `t`.
ComplexMatrix ancilla_thermal_state(const EnvSpec& env, Terminal t);

/// Operator exchanging the L and R qubits of the three-qubit system space.
ComplexMatrix lr_swap_operator();

}  // namespace wtt
