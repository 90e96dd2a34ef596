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

#include "wtt/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>

namespace wtt {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

[[noreturn]] void reject(const std::string& field, const std::string& why) {
  throw std::invalid_argument(field + ": " + why);
}

bool is_integer_ratio(double num, double den, long* ratio) {
  const double q = num / den;
  const long r = std::lround(q);
  if (r <= 0 || std::abs(q - static_cast<double>(r)) > 1e-9 * std::max(1.0, q)) return false;
  if (ratio) *ratio = r;
  return true;
}

}  // namespace

std::string_view to_string(Terminal t) {
  switch (t) {
    case Terminal::L: return "L";
    case Terminal::M: return "M";
    case Terminal::R: return "R";
  }
  return "?";
}

Terminal terminal_from_string(std::string_view s) {
  const std::string v = lower(s);
  if (v == "l") return Terminal::L;
  if (v == "m") return Terminal::M;
  if (v == "r") return Terminal::R;
  throw std::invalid_argument("unknown terminal '" + std::string(s) + "' (expected L, M or R)");
}

const SpinOps& SpinOps::get() {
  static const SpinOps ops = [] {
    SpinOps o;
    o.sx_half = ComplexMatrix::Zero(2, 2);
    o.sx_half(0, 1) = o.sx_half(1, 0) = 1.0;
    o.sz_half = ComplexMatrix::Zero(2, 2);
    o.sz_half(0, 0) = 1.0;
    o.sz_half(1, 1) = -1.0;
    const double r = 1.0 / std::sqrt(2.0);
    o.sx_one = ComplexMatrix::Zero(3, 3);
    o.sx_one(0, 1) = o.sx_one(1, 0) = o.sx_one(1, 2) = o.sx_one(2, 1) = r;
    o.sz_one = ComplexMatrix::Zero(3, 3);
    o.sz_one(0, 0) = 1.0;
    o.sz_one(2, 2) = -1.0;
    return o;
  }();
  return ops;
}

CouplingConfig CouplingConfig::baseline(double delta) {
  return CouplingConfig{delta, delta, delta, delta, delta, 0.0};
}

CouplingConfig CouplingConfig::symmetric(double delta) {
  return CouplingConfig{delta, delta, delta, delta, delta, delta};
}

CouplingConfig CouplingConfig::asymmetric(double delta, double skew) {
  return CouplingConfig{delta, delta, delta, delta, delta + skew, delta - skew};
}

CouplingConfig CouplingConfig::two_qubit(double lr_coupling) {
  return CouplingConfig{1.0, 0.0, 2.0, 0.0, 0.0, lr_coupling};
}

double CouplingConfig::omega(Terminal t) const {
  switch (t) {
    case Terminal::L: return omega_L;
    case Terminal::M: return omega_M;
    case Terminal::R: return omega_R;
  }
  return 0.0;
}

std::string_view to_string(EnvKind k) {
  switch (k) {
    case EnvKind::QutritLinear: return "qutrit-linear";
    case EnvKind::QutritNonlinear: return "qutrit-nonlinear";
    case EnvKind::Qubit: return "qubit";
  }
  return "?";
}

EnvKind env_kind_from_string(std::string_view s) {
  const std::string v = lower(s);
  if (v == "qutrit-linear" || v == "qutrit") return EnvKind::QutritLinear;
  if (v == "qutrit-nonlinear") return EnvKind::QutritNonlinear;
  if (v == "qubit") return EnvKind::Qubit;
  throw std::invalid_argument("unknown environment kind '" + std::string(s) +
                              "' (expected qutrit-linear, qutrit-nonlinear or qubit)");
}

std::string_view to_string(CurrentMethod m) {
  return m == CurrentMethod::TimeStencil ? "stencil" : "commutator";
}

CurrentMethod current_method_from_string(std::string_view s) {
  const std::string v = lower(s);
  if (v == "stencil") return CurrentMethod::TimeStencil;
  if (v == "commutator") return CurrentMethod::Commutator;
  throw std::invalid_argument("unknown current method '" + std::string(s) + "' (expected stencil or commutator)");
}

std::string_view to_string(BoundarySide b) { return b == BoundarySide::Left ? "left" : "right"; }

BoundarySide boundary_side_from_string(std::string_view s) {
  const std::string v = lower(s);
  if (v == "left") return BoundarySide::Left;
  if (v == "right") return BoundarySide::Right;
  throw std::invalid_argument("unknown boundary side '" + std::string(s) + "' (expected left or right)");
}

std::vector<Terminal> ModelConfig::terminals() const {
  if (n_system_qubits == 2) return {Terminal::L, Terminal::R};
  return {Terminal::L, Terminal::M, Terminal::R};
}

bool ModelConfig::has_terminal(Terminal t) const { return n_system_qubits == 3 || t != Terminal::M; }

std::vector<Terminal> ModelConfig::attached_terminals() const {
  std::vector<Terminal> out;
  for (Terminal t : terminals()) {
    if (env.is_attached(t)) out.push_back(t);
  }
  return out;
}

int ModelConfig::samples_per_collision() const {
  return static_cast<int>(std::lround(dt_collision / sample_dt));
}

int ModelConfig::samples_per_current_step() const {
  return static_cast<int>(std::lround(current_h / sample_dt));
}

void ModelConfig::validate() const {
  auto finite = [](const std::string& field, double v) {
    if (!std::isfinite(v)) reject(field, "must be finite");
  };
  finite("coupling.omega_L", coupling.omega_L);
  finite("coupling.omega_M", coupling.omega_M);
  finite("coupling.omega_R", coupling.omega_R);
  finite("coupling.omega_ML", coupling.omega_ML);
  finite("coupling.omega_MR", coupling.omega_MR);
  finite("coupling.omega_LR", coupling.omega_LR);
  finite("env.delta", env.delta);
  finite("env.epsilon", env.epsilon);
  finite("g", g);
  if (n_system_qubits != 2 && n_system_qubits != 3) reject("n_system_qubits", "must be 2 or 3");
  if (!(dt_collision > 0.0) || !std::isfinite(dt_collision)) reject("dt_collision", "must be > 0");
  if (!(sample_dt > 0.0) || !std::isfinite(sample_dt)) reject("sample_dt", "must be > 0");
  if (!is_integer_ratio(dt_collision, sample_dt, nullptr)) {
    reject("sample_dt", "must divide dt_collision into an integer number of samples");
  }
  if (!(stencil_h > 0.0) || !std::isfinite(stencil_h)) reject("stencil_h", "must be > 0");
  if (!(current_h > 0.0) || !std::isfinite(current_h)) reject("current_h", "must be > 0");
  if (!is_integer_ratio(current_h, sample_dt, nullptr)) {
    reject("current_h", "must be a positive multiple of sample_dt");
  }
  for (Terminal t : terminals()) {
    if (!env.is_attached(t)) continue;
    const double temp = env.temperature_of(t);
    if (!(temp > 0.0) || !std::isfinite(temp)) {
      reject("env.T_" + std::string(to_string(t)), "must be > 0 for an attached terminal");
    }
  }
}

JointLayout::JointLayout(const ModelConfig& config) {
  for (Terminal t : config.terminals()) {
    system_factor_[index_of(t)] = static_cast<int>(dims_.size());
    system_terminals_.push_back(t);
    dims_.push_back(2);
  }
  system_dim_ = 1 << static_cast<int>(system_terminals_.size());
  for (Terminal t : config.attached_terminals()) {
    env_factor_[index_of(t)] = static_cast<int>(dims_.size());
    env_terminals_.push_back(t);
    dims_.push_back(config.env.ancilla_dim());
  }
  dim_ = 1;
  for (int d : dims_) dim_ *= d;
}

ComplexMatrix JointLayout::embed(const ComplexMatrix& op, int factor) const {
  if (factor < 0 || factor >= static_cast<int>(dims_.size())) {
    throw std::invalid_argument("JointLayout::embed: factor out of range");
  }
  if (op.rows() != dims_[factor] || op.cols() != dims_[factor]) {
    throw std::invalid_argument("JointLayout::embed: operator dimension does not match factor");
  }
  int before = 1;
  for (int k = 0; k < factor; ++k) before *= dims_[k];
  const int after = dim_ / (before * dims_[factor]);
  return kron(kron(identity(before), op), identity(after));
}

ComplexMatrix JointLayout::embed_system(const ComplexMatrix& op, int factor) const {
  if (factor < 0 || factor >= system_factor_count()) {
    throw std::invalid_argument("JointLayout::embed_system: factor out of range");
  }
  const int before = 1 << factor;
  const int after = system_dim_ / (before * 2);
  return kron(kron(identity(before), op), identity(after));
}

ComplexMatrix build_system_hamiltonian(const CouplingConfig& coupling, int n) {
  if (n != 2 && n != 3) throw std::invalid_argument("build_system_hamiltonian: n must be 2 or 3");
  const int dim = 1 << n;
  // Diagonal in the computational basis: bit = 0 is sz = +1.
  std::vector<Terminal> order = n == 3 ? std::vector<Terminal>{Terminal::L, Terminal::M, Terminal::R}
                                       : std::vector<Terminal>{Terminal::L, Terminal::R};
  auto pair = [&](Terminal a, Terminal b) {
    auto has = [](Terminal x, Terminal y, Terminal p, Terminal q) {
      return (x == p && y == q) || (x == q && y == p);
    };
    if (has(a, b, Terminal::M, Terminal::L)) return coupling.omega_ML;
    if (has(a, b, Terminal::M, Terminal::R)) return coupling.omega_MR;
    return coupling.omega_LR;
  };
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (int s = 0; s < dim; ++s) {
    std::vector<double> z(n);
    for (int k = 0; k < n; ++k) z[k] = ((s >> (n - 1 - k)) & 1) ? -1.0 : 1.0;
    double e = 0.0;
    for (int k = 0; k < n; ++k) e -= 0.5 * coupling.omega(order[k]) * z[k];
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) e -= 0.5 * pair(order[a], order[b]) * z[a] * z[b];
    }
    h(s, s) = e;
  }
  return h;
}

ComplexMatrix build_env_local_hamiltonian(const EnvSpec& env) {
  switch (env.kind) {
    case EnvKind::QutritLinear: return -env.delta * SpinOps::get().sz_one;
    case EnvKind::QutritNonlinear: {
      ComplexMatrix h = ComplexMatrix::Zero(3, 3);
      h(0, 0) = -env.delta;
      h(1, 1) = -env.epsilon;
      h(2, 2) = env.delta;
      return h;
    }
    case EnvKind::Qubit: return -env.delta * SpinOps::get().sz_half;
  }
  throw std::logic_error("build_env_local_hamiltonian: unhandled kind");
}

ComplexMatrix local_qubit_hamiltonian(const CouplingConfig& coupling, Terminal t) {
  return -0.5 * coupling.omega(t) * SpinOps::get().sz_half;
}

ComplexMatrix build_interaction_hamiltonian(double g, const EnvSpec& env, const JointLayout& layout) {
  const SpinOps& ops = SpinOps::get();
  const ComplexMatrix& env_sx = env.kind == EnvKind::Qubit ? ops.sx_half : ops.sx_one;
  ComplexMatrix h = ComplexMatrix::Zero(layout.dim(), layout.dim());
  for (Terminal t : layout.env_terminals()) {
    const int sf = layout.system_factor(t);
    if (sf < 0) continue;
    h -= g * (layout.embed(ops.sx_half, sf) * layout.embed(env_sx, layout.env_factor(t)));
  }
  return h;
}

ComplexMatrix build_total_hamiltonian(const ModelConfig& config) {
  const JointLayout layout(config);
  const int env_dim = layout.env_dim();
  ComplexMatrix h = kron(build_system_hamiltonian(config.coupling, config.n_system_qubits), identity(env_dim));
  const ComplexMatrix h_env = build_env_local_hamiltonian(config.env);
  for (Terminal t : layout.env_terminals()) h += layout.embed(h_env, layout.env_factor(t));
  h += build_interaction_hamiltonian(config.g, config.env, layout);
  return h;
}

ComplexMatrix ancilla_thermal_state(const EnvSpec& env, Terminal t) {
  const double temp = env.temperature_of(t);
  if (!(temp > 0.0)) {
    throw std::invalid_argument("ancilla_thermal_state: T_" + std::string(to_string(t)) + " must be > 0");
  }
  return thermal_state(build_env_local_hamiltonian(env), 1.0 / temp);
}

ComplexMatrix lr_swap_operator() {
  ComplexMatrix p = ComplexMatrix::Zero(8, 8);
  for (int s = 0; s < 8; ++s) {
    const int l = (s >> 2) & 1;
    const int m = (s >> 1) & 1;
    const int r = s & 1;
    p((r << 2) | (m << 1) | l, s) = 1.0;
  }
  return p;
}

}  // namespace wtt
