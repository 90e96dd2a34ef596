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

#include "wtt/config.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "json.hpp"
#include "wtt/scenarios.hpp"

namespace wtt {
namespace {

using Setter = std::function<void(RunConfig&, const YAML::Node&)>;

struct KeyDef {
  std::string key;
  std::string help;
  Setter set;
};

double number(const YAML::Node& n) {
  if (!n.IsScalar()) throw std::invalid_argument("expected a number");
  double v = 0.0;
  try {
    v = n.as<double>();
  } catch (const YAML::Exception&) {
    throw std::invalid_argument("expected a number, got '" + n.Scalar() + "'");
  }
  if (!std::isfinite(v)) throw std::invalid_argument("must be finite");
  return v;
}

int integer(const YAML::Node& n) {
  if (!n.IsScalar()) throw std::invalid_argument("expected an integer");
  try {
    return n.as<int>();
  } catch (const YAML::Exception&) {
    throw std::invalid_argument("expected an integer, got '" + n.Scalar() + "'");
  }
}

bool boolean(const YAML::Node& n) {
  if (!n.IsScalar()) throw std::invalid_argument("expected true or false");
  try {
    return n.as<bool>();
  } catch (const YAML::Exception&) {
    throw std::invalid_argument("expected true or false, got '" + n.Scalar() + "'");
  }
}

std::string text(const YAML::Node& n) {
  if (!n.IsScalar()) throw std::invalid_argument("expected a scalar");
  return n.Scalar();
}

std::vector<std::string> text_list(const YAML::Node& n) {
  std::vector<std::string> out;
  if (n.IsScalar()) {
    out.push_back(n.Scalar());
  } else if (n.IsSequence()) {
    for (const auto& item : n) out.push_back(text(item));
  } else {
    throw std::invalid_argument("expected a list");
  }
  return out;
}

std::vector<Terminal> terminal_list(const YAML::Node& n) {
  std::vector<Terminal> out;
  for (const std::string& s : text_list(n)) out.push_back(terminal_from_string(s));
  return out;
}

std::vector<double> grid_of(const YAML::Node& n) {
  if (n.IsSequence()) {
    std::vector<double> out;
    for (const auto& item : n) out.push_back(number(item));
    return out;
  }
  if (n.IsMap()) {
    for (const auto& kv : n) {
      const std::string k = kv.first.Scalar();
      if (k != "from" && k != "to" && k != "step") throw std::invalid_argument("unknown grid field '" + k + "'");
    }
    if (!n["from"] || !n["to"] || !n["step"]) throw std::invalid_argument("grid needs from, to and step");
    return linear_grid(number(n["from"]), number(n["to"]), number(n["step"]));
  }
  throw std::invalid_argument("expected a list of numbers or {from, to, step}");
}

SweepSpec& sweep_of(RunConfig& c) {
  if (!c.sweep) c.sweep.emplace();
  return *c.sweep;
}

const std::vector<KeyDef>& key_table() {
  static const std::vector<KeyDef> table = [] {
    std::vector<KeyDef> k;
    auto add = [&](std::string key, std::string help, Setter s) { k.push_back({std::move(key), std::move(help), std::move(s)}); };
    add("scenario", "named figure recipe (see `wtt scenarios`)",
        [](RunConfig& c, const YAML::Node& n) { c.scenario = text(n); });
    add("time", "evaluation time t for sweeps over T, g or epsilon (t~)",
        [](RunConfig& c, const YAML::Node& n) { c.time = number(n); });
    add("workers", "worker threads for independent points",
        [](RunConfig& c, const YAML::Node& n) { c.workers = integer(n); });
    add("output.dir", "output directory", [](RunConfig& c, const YAML::Node& n) { c.output_dir = text(n); });

    add("model.n_system_qubits", "2 (L, R) or 3 (L, M, R)",
        [](RunConfig& c, const YAML::Node& n) { c.base.n_system_qubits = integer(n); });
    add("model.g", "qubit-ancilla coupling (1/t~)", [](RunConfig& c, const YAML::Node& n) { c.base.g = number(n); });
    add("model.dt_collision", "collision duration (t~)",
        [](RunConfig& c, const YAML::Node& n) { c.base.dt_collision = number(n); });
    add("model.sample_dt", "sampling step inside a collision (t~)",
        [](RunConfig& c, const YAML::Node& n) { c.base.sample_dt = number(n); });
    add("model.stencil_h", "temperature stencil step h (T~)",
        [](RunConfig& c, const YAML::Node& n) { c.base.stencil_h = number(n); });
    add("model.current_method", "stencil | commutator",
        [](RunConfig& c, const YAML::Node& n) { c.base.current_method = current_method_from_string(text(n)); });
    add("model.current_h", "time step of the current stencil (t~)",
        [](RunConfig& c, const YAML::Node& n) { c.base.current_h = number(n); });
    add("model.boundary", "left | right: side of a collision boundary for commutator currents",
        [](RunConfig& c, const YAML::Node& n) { c.base.boundary = boundary_side_from_string(text(n)); });
    add("model.modulating", "terminal whose bath temperature is varied (L, M or R)",
        [](RunConfig& c, const YAML::Node& n) { c.modulating = terminal_from_string(text(n)); });
    add("model.divergence_tol", "|dJ_mod/dT| below which alpha is reported as diverged",
        [](RunConfig& c, const YAML::Node& n) { c.divergence_tol = number(n); });

    add("model.coupling.preset", "baseline | symmetric | asymmetric | two_qubit",
        [](RunConfig& c, const YAML::Node& n) {
          const std::string p = text(n);
          if (p != "baseline" && p != "symmetric" && p != "asymmetric" && p != "two_qubit") {
            throw std::invalid_argument("unknown coupling preset '" + p + "'");
          }
          c.coupling.preset = p;
        });
    add("model.coupling.delta", "preset scale Delta for omega_i and omega_ij (1/t~)",
        [](RunConfig& c, const YAML::Node& n) { c.coupling.delta = number(n); });
    add("model.coupling.skew", "asymmetric preset offset delta (1/t~)",
        [](RunConfig& c, const YAML::Node& n) { c.coupling.skew = number(n); });
    add("model.coupling.lr", "two_qubit preset omega_LR (1/t~)",
        [](RunConfig& c, const YAML::Node& n) { c.coupling.lr = number(n); });
    add("model.coupling.omega_L", "explicit omega_L (1/t~)", [](RunConfig& c, const YAML::Node& n) { c.coupling.omega_L = number(n); });
    add("model.coupling.omega_M", "explicit omega_M (1/t~)", [](RunConfig& c, const YAML::Node& n) { c.coupling.omega_M = number(n); });
    add("model.coupling.omega_R", "explicit omega_R (1/t~)", [](RunConfig& c, const YAML::Node& n) { c.coupling.omega_R = number(n); });
    add("model.coupling.omega_ML", "explicit omega_ML (1/t~)", [](RunConfig& c, const YAML::Node& n) { c.coupling.omega_ML = number(n); });
    add("model.coupling.omega_MR", "explicit omega_MR (1/t~)", [](RunConfig& c, const YAML::Node& n) { c.coupling.omega_MR = number(n); });
    add("model.coupling.omega_LR", "explicit omega_LR (1/t~)", [](RunConfig& c, const YAML::Node& n) { c.coupling.omega_LR = number(n); });

    add("model.env.kind", "qutrit-linear | qutrit-nonlinear | qubit",
        [](RunConfig& c, const YAML::Node& n) { c.base.env.kind = env_kind_from_string(text(n)); });
    add("model.env.delta", "ancilla level spacing Delta (1/t~)",
        [](RunConfig& c, const YAML::Node& n) { c.base.env.delta = number(n); });
    add("model.env.epsilon", "middle-level shift; < 0 transmon, > 0 Kerr (1/t~)",
        [](RunConfig& c, const YAML::Node& n) { c.base.env.epsilon = number(n); });
    for (Terminal t : kAllTerminals) {
      const std::string s(to_string(t));
      add("model.env.T_" + s, "bath temperature of terminal " + s + " (T~)",
          [t](RunConfig& c, const YAML::Node& n) { c.base.env.temperature_of(t) = number(n); });
      add("model.env.attached." + s, "whether terminal " + s + " collides with ancillas",
          [t](RunConfig& c, const YAML::Node& n) { c.base.env.attached[index_of(t)] = boolean(n); });
    }
    add("model.env.detached", "none | L | M | R: shorthand that detaches one terminal",
        [](RunConfig& c, const YAML::Node& n) {
          const std::string v = text(n);
          c.base.env.attached = {true, true, true};
          if (v != "none") c.base.env.attached[index_of(terminal_from_string(v))] = false;
        });

    add("sweep.axis", "T_M (modulating temperature) | t | g | epsilon",
        [](RunConfig& c, const YAML::Node& n) { sweep_of(c).axis = sweep_axis_from_string(text(n)); });
    add("sweep.grid", "list of values or {from, to, step}",
        [](RunConfig& c, const YAML::Node& n) { sweep_of(c).grid = grid_of(n); });
    add("sweep.terminals", "terminals whose alpha is reported",
        [](RunConfig& c, const YAML::Node& n) { sweep_of(c).terminals = terminal_list(n); });
    add("sweep.quantities", "any of currents, derivatives, alpha",
        [](RunConfig& c, const YAML::Node& n) {
          auto q = text_list(n);
          for (const auto& s : q) {
            if (s != "currents" && s != "derivatives" && s != "alpha") {
              throw std::invalid_argument("unknown quantity '" + s + "'");
            }
          }
          sweep_of(c).quantities = q;
        });
    add("sweep.series", "{key: <model key>, values: [...]}: one column group per value",
        [](RunConfig& c, const YAML::Node& n) {
          if (!n.IsMap() || !n["key"] || !n["values"]) throw std::invalid_argument("series needs key and values");
          for (const auto& kv : n) {
            const std::string k = kv.first.Scalar();
            if (k != "key" && k != "values") throw std::invalid_argument("unknown series field '" + k + "'");
          }
          SeriesSpec s;
          s.key = text(n["key"]);
          s.values = text_list(n["values"]);
          sweep_of(c).series = s;
        });

    add("blp.theta_points", "polar grid size of the pair search",
        [](RunConfig& c, const YAML::Node& n) { c.blp.search.theta_points = integer(n); });
    add("blp.phi_points", "azimuthal grid size of the pair search",
        [](RunConfig& c, const YAML::Node& n) { c.blp.search.phi_points = integer(n); });
    add("blp.angular_tolerance", "refinement stop step (rad)",
        [](RunConfig& c, const YAML::Node& n) { c.blp.search.angular_tolerance = number(n); });
    add("blp.general_pairs", "search general pairs over four angles",
        [](RunConfig& c, const YAML::Node& n) { c.blp.search.general_pairs = boolean(n); });
    add("blp.increment_floor", "trace-distance increments at or below this count as zero",
        [](RunConfig& c, const YAML::Node& n) { c.blp.search.increment_floor = number(n); });
    add("blp.t_max", "cutoff time of the measure (t~)",
        [](RunConfig& c, const YAML::Node& n) { c.blp.t_max = number(n); });
    return k;
  }();
  return table;
}

const KeyDef* find_key(std::string_view key) {
  for (const KeyDef& d : key_table()) {
    if (d.key == key) return &d;
  }
  return nullptr;
}

bool is_leaf_map(const std::string& key) { return key == "sweep.grid" || key == "sweep.series"; }

struct Located {
  std::string key;
  YAML::Node node;
  std::string where;
};

std::string mark_string(std::string_view source, const YAML::Mark& m) {
  std::ostringstream s;
  s << source;
  if (m.line >= 0) s << ":" << m.line + 1 << ":" << m.column + 1;
  return s.str();
}

void flatten(const YAML::Node& node, const std::string& prefix, std::string_view source, std::vector<Located>& out) {
  for (const auto& kv : node) {
    const std::string name = kv.first.Scalar();
    const std::string key = prefix.empty() ? name : prefix + "." + name;
    const YAML::Node& value = kv.second;
    if (value.IsMap() && !is_leaf_map(key)) {
      flatten(value, key, source, out);
    } else if (!value.IsNull()) {
      out.push_back({key, value, mark_string(source, kv.first.Mark())});
    }
  }
}

void apply_located(RunConfig& config, const Located& item) {
  const KeyDef* def = find_key(item.key);
  if (!def) throw ConfigError(item.where + ": unknown key '" + item.key + "'");
  try {
    def->set(config, item.node);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(item.where + ": " + item.key + ": " + e.what());
  }
}

Located parse_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError("--set " + assignment + ": expected key=value");
  }
  Located item;
  item.key = assignment.substr(0, eq);
  item.where = "--set";
  const std::string value = assignment.substr(eq + 1);
  try {
    item.node = YAML::Load(value);
  } catch (const YAML::Exception& e) {
    throw ConfigError(item.where + ": cannot parse value: " + e.msg);
  }
  if (item.node.IsNull()) throw ConfigError(item.where + ": missing value");
  return item;
}

void apply_defaults(RunConfig& config, const std::string& scenario) {
  const Scenario* s = find_scenario(scenario);
  if (!s) throw std::invalid_argument("unknown scenario '" + scenario + "' (see `wtt scenarios`)");
  for (const auto& [key, value] : s->defaults) apply_setting(config, key, value);
  config.scenario = scenario;
}

std::string field_of(const std::string& message) {
  const auto colon = message.find(':');
  return colon == std::string::npos ? std::string() : message.substr(0, colon);
}

}  // namespace

CouplingConfig CouplingSpec::resolve() const {
  CouplingConfig c;
  if (preset == "baseline") {
    c = CouplingConfig::baseline(delta);
  } else if (preset == "symmetric") {
    c = CouplingConfig::symmetric(delta);
  } else if (preset == "asymmetric") {
    c = CouplingConfig::asymmetric(delta, skew);
  } else if (preset == "two_qubit") {
    c = CouplingConfig::two_qubit(lr);
  } else {
    throw ConfigError("model.coupling.preset: unknown preset '" + preset + "'");
  }
  if (omega_L) c.omega_L = *omega_L;
  if (omega_M) c.omega_M = *omega_M;
  if (omega_R) c.omega_R = *omega_R;
  if (omega_ML) c.omega_ML = *omega_ML;
  if (omega_MR) c.omega_MR = *omega_MR;
  if (omega_LR) c.omega_LR = *omega_LR;
  return c;
}

ModelConfig RunConfig::model() const {
  ModelConfig m = base;
  m.coupling = coupling.resolve();
  return m;
}

AmplificationOptions RunConfig::amplification_options() const {
  AmplificationOptions o;
  o.modulating = modulating;
  o.divergence_tol = divergence_tol;
  o.workers = workers;
  return o;
}

SweepOptions RunConfig::sweep_options() const {
  SweepOptions o;
  o.time = time;
  o.amplification = amplification_options();
  if (sweep) o.terminals = sweep->terminals;
  return o;
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
  apply_located(config, parse_override(std::string(key) + "=" + std::string(value)));
}

void validate(const RunConfig& config) {
  const ModelConfig m = config.model();
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("model.") + e.what());
  }
  if (config.scenario && config.sweep) {
    throw ConfigError("sweep: a run selects either a scenario or an explicit sweep, not both");
  }
  if (!config.scenario && !config.sweep) throw ConfigError("scenario: a run needs a scenario or a sweep section");
  if (config.scenario && !find_scenario(*config.scenario)) {
    throw ConfigError("scenario: unknown scenario '" + *config.scenario + "'");
  }
  if (config.workers < 1) throw ConfigError("workers: must be >= 1");
  if (!(config.time >= 0.0)) throw ConfigError("time: must be >= 0");
  if (!(config.divergence_tol >= 0.0)) throw ConfigError("model.divergence_tol: must be >= 0");
  if (!m.has_terminal(config.modulating)) throw ConfigError("model.modulating: terminal is not present");
  if (!m.env.is_attached(config.modulating)) throw ConfigError("model.modulating: terminal must be attached");
  const double tmod = m.env.temperature_of(config.modulating);
  if (!(tmod - 2.0 * m.stencil_h > 0.0)) {
    throw ConfigError("model.env.T_" + std::string(to_string(config.modulating)) +
                      ": must exceed 2 * stencil_h so the temperature stencil stays positive");
  }
  const SearchConfig& s = config.blp.search;
  if (s.theta_points < 2) throw ConfigError("blp.theta_points: must be >= 2");
  if (s.phi_points < 1) throw ConfigError("blp.phi_points: must be >= 1");
  if (!(s.angular_tolerance > 0.0)) throw ConfigError("blp.angular_tolerance: must be > 0");
  if (!(s.increment_floor >= 0.0)) throw ConfigError("blp.increment_floor: must be >= 0");
  if (!(config.blp.t_max > 0.0)) throw ConfigError("blp.t_max: must be > 0");

  if (config.sweep) {
    const SweepSpec& sw = *config.sweep;
    if (sw.grid.empty()) throw ConfigError("sweep.grid: required and non-empty");
    for (std::size_t i = 1; i < sw.grid.size(); ++i) {
      if (!(sw.grid[i] > sw.grid[i - 1])) throw ConfigError("sweep.grid: must be strictly ascending");
    }
    for (Terminal t : sw.terminals) {
      if (!m.has_terminal(t)) throw ConfigError("sweep.terminals: terminal " + std::string(to_string(t)) + " not present");
    }
    if (sw.quantities.empty()) throw ConfigError("sweep.quantities: must not be empty");
    if (sw.axis == SweepAxis::Epsilon && m.env.kind != EnvKind::QutritNonlinear) {
      throw ConfigError("sweep.axis: epsilon requires model.env.kind = qutrit-nonlinear");
    }
    if (sw.axis == SweepAxis::Time) {
      for (double t : sw.grid) {
        try {
          sample_index(m, t);
        } catch (const std::invalid_argument& e) {
          throw ConfigError(std::string("sweep.grid: ") + e.what());
        }
      }
    } else {
      try {
        sample_index(m, config.time);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("time: ") + e.what());
      }
    }
    if (sw.axis == SweepAxis::ModulatingTemperature && !(sw.grid.front() - 2.0 * m.stencil_h > 0.0)) {
      throw ConfigError("sweep.grid: temperatures must exceed 2 * stencil_h");
    }
    if (sw.series) {
      if (!sw.series->key.starts_with("model.") || !find_key(sw.series->key)) {
        throw ConfigError("sweep.series: key '" + sw.series->key + "' is not a model key");
      }
      if (sw.series->values.empty()) throw ConfigError("sweep.series: values must not be empty");
      for (const std::string& v : sw.series->values) {
        RunConfig copy = config;
        copy.sweep.reset();
        copy.scenario = "fig2";
        apply_setting(copy, sw.series->key, v);
        try {
          copy.model().validate();
        } catch (const std::invalid_argument& e) {
          throw ConfigError("sweep.series: value '" + v + "': " + e.what());
        }
      }
    }
  }
}

RunConfig parse_config(std::string_view document, const std::vector<std::string>& overrides, std::string_view source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(document));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(mark_string(source, e.mark) + ": " + e.msg);
  }
  if (root.IsMap() && root["parameters"] && root["artifact"]) root = root["parameters"];
  if (!root.IsNull() && !root.IsMap()) throw ConfigError(std::string(source) + ": document must be a mapping");

  std::vector<Located> items;
  if (root.IsMap()) flatten(root, "", source, items);
  for (const std::string& o : overrides) items.push_back(parse_override(o));

  RunConfig config;
  // Scenario defaults come first so the document and overrides can refine them.
  std::map<std::string, std::string> where;
  for (const Located& item : items) {
    if (item.key != "scenario") continue;
    try {
      apply_defaults(config, text(item.node));
    } catch (const std::exception& e) {
      throw ConfigError(item.where + ": scenario: " + e.what());
    }
  }
  for (const Located& item : items) {
    apply_located(config, item);
    where[item.key] = item.where;
  }
  try {
    validate(config);
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    const std::string field = field_of(msg);
    auto it = where.find(field);
    if (it == where.end()) {
      // Model-level messages name the field without the attachment sub-key.
      for (const auto& [k, w] : where) {
        if (!field.empty() && k.starts_with(field)) {
          it = where.find(k);
          break;
        }
      }
    }
    throw ConfigError((it != where.end() ? it->second : std::string(source)) + ": " + msg);
  }
  return config;
}

RunConfig scenario_config(std::string_view scenario, const std::vector<std::string>& overrides) {
  std::vector<std::string> all;
  all.push_back("scenario=" + std::string(scenario));
  all.insert(all.end(), overrides.begin(), overrides.end());
  return parse_config("", all, "<scenario>");
}

std::string parameters_json(const RunConfig& c) {
  using nlohmann::ordered_json;
  ordered_json j;
  if (c.scenario) j["scenario"] = *c.scenario;
  j["time"] = c.time;
  j["workers"] = c.workers;
  j["output"] = {{"dir", c.output_dir}};

  const ModelConfig& m = c.base;
  ordered_json model;
  model["n_system_qubits"] = m.n_system_qubits;
  model["g"] = m.g;
  model["dt_collision"] = m.dt_collision;
  model["sample_dt"] = m.sample_dt;
  model["stencil_h"] = m.stencil_h;
  model["current_method"] = std::string(to_string(m.current_method));
  model["current_h"] = m.current_h;
  model["boundary"] = std::string(to_string(m.boundary));
  model["modulating"] = std::string(to_string(c.modulating));
  model["divergence_tol"] = c.divergence_tol;
  ordered_json coupling;
  coupling["preset"] = c.coupling.preset;
  coupling["delta"] = c.coupling.delta;
  coupling["skew"] = c.coupling.skew;
  coupling["lr"] = c.coupling.lr;
  auto opt = [&](const char* name, const std::optional<double>& v) {
    if (v) coupling[name] = *v;
  };
  opt("omega_L", c.coupling.omega_L);
  opt("omega_M", c.coupling.omega_M);
  opt("omega_R", c.coupling.omega_R);
  opt("omega_ML", c.coupling.omega_ML);
  opt("omega_MR", c.coupling.omega_MR);
  opt("omega_LR", c.coupling.omega_LR);
  model["coupling"] = coupling;
  ordered_json env;
  env["kind"] = std::string(to_string(m.env.kind));
  env["delta"] = m.env.delta;
  env["epsilon"] = m.env.epsilon;
  for (Terminal t : kAllTerminals) env["T_" + std::string(to_string(t))] = m.env.temperature_of(t);
  ordered_json attached;
  for (Terminal t : kAllTerminals) attached[std::string(to_string(t))] = m.env.is_attached(t);
  env["attached"] = attached;
  model["env"] = env;
  j["model"] = model;

  if (c.sweep) {
    ordered_json sw;
    sw["axis"] = std::string(to_string(c.sweep->axis));
    sw["grid"] = c.sweep->grid;
    std::vector<std::string> terms;
    for (Terminal t : c.sweep->terminals) terms.emplace_back(to_string(t));
    sw["terminals"] = terms;
    sw["quantities"] = c.sweep->quantities;
    if (c.sweep->series) sw["series"] = {{"key", c.sweep->series->key}, {"values", c.sweep->series->values}};
    j["sweep"] = sw;
  }
  const SearchConfig& s = c.blp.search;
  j["blp"] = {{"theta_points", s.theta_points},     {"phi_points", s.phi_points},
              {"angular_tolerance", s.angular_tolerance}, {"general_pairs", s.general_pairs},
              {"increment_floor", s.increment_floor}, {"t_max", c.blp.t_max}};
  return j.dump(2);
}

std::vector<std::pair<std::string, std::string>> config_keys() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const KeyDef& d : key_table()) out.emplace_back(d.key, d.help);
  return out;
}

}  // namespace wtt
