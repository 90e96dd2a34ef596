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

// Figures of merit built on the collision engine: temperature derivatives of
// the local currents, dynamical amplification factors, critical temperatures
// and one-axis sweeps.

#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wtt/collision.hpp"
#include "wtt/model.hpp"

namespace wtt {

/// (f(x-2h) - 8 f(x-h) + 8 f(x+h) - f(x+2h)) / (12 h).
double five_point_derivative(const std::function<double(double)>& f, double x0, double h);
/// Same stencil on values already sampled at x0 - 2h, ..., x0 + 2h.
double five_point_derivative(std::span<const double, 5> values, double h);

struct AmplificationOptions {
  /// Terminal whose bath temperature is varied (the transistor base).
  Terminal modulating = Terminal::M;
  /// |dJ_mod/dT| below this yields the divergence marker.
  double divergence_tol = 1e-8;
  int workers = 1;
};

/// Currents and their derivatives w.r.t. the modulating temperature at one time.
struct StencilPoint {
  double time = 0.0;
  std::array<double, 3> currents{};
  std::array<double, 3> derivatives{};
};

struct AmplificationResult {
  Terminal terminal = Terminal::L;
  Terminal modulating = Terminal::M;
  double time = 0.0;
  /// Empty when |dJ_mod/dT| < divergence_tol (the divergence marker).
  std::optional<double> alpha;
  double dJX_dT = 0.0;
  double dJmod_dT = 0.0;

  bool diverged() const { return !alpha.has_value(); }
};

/// Five runs at T_mod + {-2h, -h, 0, h, 2h}, each sampled at every time in
/// `times`. Requires T_mod - 2h > 0. Runs are spread over options.workers.
std::vector<StencilPoint> temperature_derivatives(const ModelConfig& config, std::span<const double> times,
                                                  const AmplificationOptions& options = {},
                                                  std::shared_ptr<const CollisionHamiltonian> cache = nullptr);

AmplificationResult amplification_from(const StencilPoint& point, Terminal terminal,
                                       const AmplificationOptions& options = {});

/// alpha_X = (dJ_X/dT_mod) / (dJ_mod/dT_mod) at time t.
AmplificationResult amplification(const ModelConfig& config, double t, Terminal terminal,
                                  const AmplificationOptions& options = {});

/// J_X(t) under the configured current method and boundary side.
double current_at(const ModelConfig& config, double t, Terminal terminal);

/// Thrown when dJ_mod/dT has the same sign at both ends of the bracket.
class NoSignChange : public std::runtime_error {
 public:
  NoSignChange(double lo, double hi, double d_lo, double d_hi);
  double lo, hi, d_lo, d_hi;
};

struct CriticalSearch {
  /// Set when a root was bracketed and bisected.
  std::optional<double> temperature;
  double lo = 0.0;
  double hi = 0.0;
  double d_lo = 0.0;
  double d_hi = 0.0;
  int iterations = 0;
};

struct CriticalOptions {
  Terminal modulating = Terminal::M;
  double tolerance = 1e-3;
  int max_iterations = 40;
};

/// Bisection of T_mod -> dJ_mod/dT_mod on [lo, hi]; never throws for a
/// missing sign change, reporting the endpoint derivatives instead.
CriticalSearch search_critical_temperature(const ModelConfig& config, double t, double lo, double hi,
                                           const CriticalOptions& options = {});

/// As above but throws NoSignChange when the bracket holds no root.
double find_critical_temperature(const ModelConfig& config, double t, double lo, double hi,
                                 const CriticalOptions& options = {});

enum class SweepAxis { ModulatingTemperature, Time, Coupling, Epsilon };

std::string_view to_string(SweepAxis axis);
/// Accepts "T_mod", "T_M", "T_L", "T_R" (all map to the modulating temperature), "t", "g", "epsilon".
SweepAxis sweep_axis_from_string(std::string_view s);

struct SweepOptions {
  /// Evaluation time for every axis except Time.
  double time = 1.0;
  AmplificationOptions amplification;
  /// Terminals whose alpha is reported; empty means all present but the modulating one.
  std::vector<Terminal> terminals;
};

struct SweepRecord {
  double x = 0.0;
  std::array<double, 3> currents{};
  std::array<double, 3> derivatives{};
  std::array<std::optional<double>, 3> alpha;
  /// Non-empty when the point failed; the remaining fields are then zero.
  std::string error;

  bool ok() const { return error.empty(); }
};

struct SweepResult {
  SweepAxis axis = SweepAxis::ModulatingTemperature;
  std::string axis_name;
  std::string axis_unit;
  Terminal modulating = Terminal::M;
  std::vector<Terminal> terminals;
  std::vector<double> grid;
  std::vector<SweepRecord> records;

  std::size_t failures() const;
};

/// One record per grid point, in grid order. Grid must be strictly ascending.
/// Failures are recorded per point. Invalid configurations throw.
SweepResult sweep(const ModelConfig& config, SweepAxis axis, std::vector<double> grid,
                  const SweepOptions& options = {});

/// lo, lo + step, ..., hi with the end point included when it lands within step/1000.
std::vector<double> linear_grid(double lo, double hi, double step);

}  // namespace wtt
