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

#include "wtt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wtt/parallel.hpp"

namespace wtt {

double five_point_derivative(const std::function<double(double)>& f, double x0, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("five_point_derivative: h must be > 0");
  const std::array<double, 5> v{f(x0 - 2.0 * h), f(x0 - h), f(x0), f(x0 + h), f(x0 + 2.0 * h)};
  return five_point_derivative(std::span<const double, 5>(v), h);
}

double five_point_derivative(std::span<const double, 5> v, double h) {
  return (v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * h);
}

std::vector<StencilPoint> temperature_derivatives(const ModelConfig& config, std::span<const double> times,
                                                  const AmplificationOptions& options,
                                                  std::shared_ptr<const CollisionHamiltonian> cache) {
  config.validate();
  const Terminal mod = options.modulating;
  if (!config.has_terminal(mod) || !config.env.is_attached(mod)) {
    throw std::invalid_argument("temperature_derivatives: modulating terminal " + std::string(to_string(mod)) +
                                " must be present and attached");
  }
  const double h = config.stencil_h;
  const double t0 = config.env.temperature_of(mod);
  if (!(t0 - 2.0 * h > 0.0)) {
    std::ostringstream msg;
    msg << "temperature stencil leaves the physical domain: T_" << to_string(mod) << " - 2h = " << t0 - 2.0 * h;
    throw std::invalid_argument(msg.str());
  }
  if (!cache) cache = CollisionHamiltonian::create(config);

  std::array<std::vector<std::array<double, 3>>, 5> runs;
  parallel_for(5, options.workers, [&](std::size_t k) {
    ModelConfig shifted = config;
    shifted.env.temperature_of(mod) = t0 + (static_cast<double>(k) - 2.0) * h;
    runs[k] = currents_at(shifted, times, cache);
  });

  std::vector<StencilPoint> out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    out[i].time = times[i];
    for (Terminal t : config.terminals()) {
      const int x = index_of(t);
      const std::array<double, 5> v{runs[0][i][x], runs[1][i][x], runs[2][i][x], runs[3][i][x], runs[4][i][x]};
      out[i].currents[x] = v[2];
      out[i].derivatives[x] = five_point_derivative(std::span<const double, 5>(v), h);
    }
  }
  return out;
}

AmplificationResult amplification_from(const StencilPoint& point, Terminal terminal,
                                       const AmplificationOptions& options) {
  AmplificationResult r;
  r.terminal = terminal;
  r.modulating = options.modulating;
  r.time = point.time;
  r.dJX_dT = point.derivatives[index_of(terminal)];
  r.dJmod_dT = point.derivatives[index_of(options.modulating)];
  if (std::abs(r.dJmod_dT) >= options.divergence_tol) r.alpha = r.dJX_dT / r.dJmod_dT;
  return r;
}

AmplificationResult amplification(const ModelConfig& config, double t, Terminal terminal,
                                  const AmplificationOptions& options) {
  if (!config.has_terminal(terminal)) throw std::invalid_argument("amplification: terminal not present");
  const auto points = temperature_derivatives(config, std::span<const double>(&t, 1), options);
  return amplification_from(points.front(), terminal, options);
}

double current_at(const ModelConfig& config, double t, Terminal terminal) {
  if (!config.has_terminal(terminal)) throw std::invalid_argument("current_at: terminal not present");
  return currents_at(config, std::span<const double>(&t, 1)).front()[index_of(terminal)];
}

NoSignChange::NoSignChange(double lo_, double hi_, double d_lo_, double d_hi_)
    : std::runtime_error([&] {
        std::ostringstream msg;
        msg << "no sign change of dJ/dT in [" << lo_ << ", " << hi_ << "]: derivative " << d_lo_ << " at "
            << lo_ << ", " << d_hi_ << " at " << hi_;
        return msg.str();
      }()),
      lo(lo_),
      hi(hi_),
      d_lo(d_lo_),
      d_hi(d_hi_) {}

CriticalSearch search_critical_temperature(const ModelConfig& config, double t, double lo, double hi,
                                           const CriticalOptions& options) {
  if (!(lo < hi)) throw std::invalid_argument("critical temperature bracket must satisfy lo < hi");
  const auto cache = CollisionHamiltonian::create(config);
  AmplificationOptions amp;
  amp.modulating = options.modulating;
  const int mod = index_of(options.modulating);
  auto derivative = [&](double temp) {
    ModelConfig c = config;
    c.env.temperature_of(options.modulating) = temp;
    return temperature_derivatives(c, std::span<const double>(&t, 1), amp, cache).front().derivatives[mod];
  };

  CriticalSearch s;
  s.lo = lo;
  s.hi = hi;
  s.d_lo = derivative(lo);
  s.d_hi = derivative(hi);
  if (s.d_lo == 0.0) {
    s.temperature = lo;
    return s;
  }
  if (s.d_hi == 0.0) {
    s.temperature = hi;
    return s;
  }
  if ((s.d_lo > 0.0) == (s.d_hi > 0.0)) return s;

  double a = lo;
  double b = hi;
  double fa = s.d_lo;
  while (b - a > options.tolerance && s.iterations < options.max_iterations) {
    const double mid = 0.5 * (a + b);
    const double fm = derivative(mid);
    ++s.iterations;
    if (fm == 0.0) {
      a = b = mid;
      break;
    }
    if ((fm > 0.0) == (fa > 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  s.temperature = 0.5 * (a + b);
  return s;
}

double find_critical_temperature(const ModelConfig& config, double t, double lo, double hi,
                                 const CriticalOptions& options) {
  const CriticalSearch s = search_critical_temperature(config, t, lo, hi, options);
  if (!s.temperature) throw NoSignChange(s.lo, s.hi, s.d_lo, s.d_hi);
  return *s.temperature;
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::ModulatingTemperature: return "T_mod";
    case SweepAxis::Time: return "t";
    case SweepAxis::Coupling: return "g";
    case SweepAxis::Epsilon: return "epsilon";
  }
  return "?";
}

SweepAxis sweep_axis_from_string(std::string_view s) {
  if (s == "T_mod" || s == "T_M" || s == "T_L" || s == "T_R") return SweepAxis::ModulatingTemperature;
  if (s == "t") return SweepAxis::Time;
  if (s == "g") return SweepAxis::Coupling;
  if (s == "epsilon") return SweepAxis::Epsilon;
  throw std::invalid_argument("unknown sweep axis '" + std::string(s) + "' (expected T_M, t, g or epsilon)");
}

std::size_t SweepResult::failures() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const SweepRecord& r) { return !r.ok(); }));
}

namespace {

SweepRecord record_from(double x, const StencilPoint& p, const std::vector<Terminal>& terminals,
                        const AmplificationOptions& options) {
  SweepRecord r;
  r.x = x;
  r.currents = p.currents;
  r.derivatives = p.derivatives;
  for (Terminal t : terminals) r.alpha[index_of(t)] = amplification_from(p, t, options).alpha;
  return r;
}

}  // namespace

SweepResult sweep(const ModelConfig& config, SweepAxis axis, std::vector<double> grid, const SweepOptions& options) {
  config.validate();
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("sweep: grid must be strictly ascending");
  }
  const AmplificationOptions& amp = options.amplification;
  if (axis == SweepAxis::Epsilon && config.env.kind != EnvKind::QutritNonlinear) {
    throw std::invalid_argument("sweep: the epsilon axis requires a qutrit-nonlinear environment");
  }

  SweepResult result;
  result.axis = axis;
  result.modulating = amp.modulating;
  switch (axis) {
    case SweepAxis::ModulatingTemperature:
      result.axis_name = "T_" + std::string(to_string(amp.modulating));
      result.axis_unit = "T~";
      break;
    case SweepAxis::Time:
      result.axis_name = "t";
      result.axis_unit = "t~";
      break;
    case SweepAxis::Coupling:
      result.axis_name = "g";
      result.axis_unit = "1/t~";
      break;
    case SweepAxis::Epsilon:
      result.axis_name = "epsilon";
      result.axis_unit = "1/t~";
      break;
  }
  result.terminals = options.terminals;
  if (result.terminals.empty()) {
    for (Terminal t : config.terminals()) {
      if (t != amp.modulating) result.terminals.push_back(t);
    }
  }
  for (Terminal t : result.terminals) {
    if (!config.has_terminal(t)) throw std::invalid_argument("sweep: terminal " + std::string(to_string(t)) + " not present");
  }
  result.grid = std::move(grid);
  result.records.resize(result.grid.size());

  if (axis == SweepAxis::Time) {
    // One set of five runs covers every time point.
    try {
      const auto points = temperature_derivatives(config, result.grid, amp);
      for (std::size_t i = 0; i < points.size(); ++i) {
        result.records[i] = record_from(result.grid[i], points[i], result.terminals, amp);
      }
    } catch (const std::exception& e) {
      for (std::size_t i = 0; i < result.grid.size(); ++i) {
        result.records[i].x = result.grid[i];
        result.records[i].error = e.what();
      }
    }
    return result;
  }

  // Temperature sweeps share one spectrum; g and epsilon change H_tot per point.
  std::shared_ptr<const CollisionHamiltonian> shared;
  if (axis == SweepAxis::ModulatingTemperature) shared = CollisionHamiltonian::create(config);
  AmplificationOptions inner = amp;
  inner.workers = 1;
  const double t = options.time;
  parallel_for(result.grid.size(), amp.workers, [&](std::size_t i) {
    const double x = result.grid[i];
    SweepRecord& rec = result.records[i];
    try {
      ModelConfig c = config;
      switch (axis) {
        case SweepAxis::ModulatingTemperature: c.env.temperature_of(amp.modulating) = x; break;
        case SweepAxis::Coupling: c.g = x; break;
        case SweepAxis::Epsilon: c.env.epsilon = x; break;
        case SweepAxis::Time: break;
      }
      const auto points = temperature_derivatives(c, std::span<const double>(&t, 1), inner, shared);
      rec = record_from(x, points.front(), result.terminals, amp);
    } catch (const std::exception& e) {
      rec = SweepRecord{};
      rec.x = x;
      rec.error = e.what();
    }
  });
  return result;
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("linear_grid: need step > 0 and hi >= lo");
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-3));
  out.reserve(n + 1);
  for (long k = 0; k <= n; ++k) {
    // Snap to 1e-9 so multiples of the sample step land on exact sample indices.
    out.push_back(std::round((lo + k * step) * 1e9) / 1e9);
  }
  return out;
}

}  // namespace wtt
