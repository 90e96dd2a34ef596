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

#include "wtt/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "json.hpp"

#ifndef WTT_VERSION
#define WTT_VERSION "unknown"
#endif

namespace wtt {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using Settings = std::vector<std::pair<std::string, std::string>>;

const std::vector<std::string> kEpsilons{"-0.05", "-0.01", "0", "0.01", "0.05"};

TableSpec sweep_table(std::string stem, SweepAxis axis, std::vector<double> grid, std::vector<Terminal> terminals,
                      Settings fixed = {}, std::optional<SeriesSpec> series = std::nullopt) {
  TableSpec t;
  t.stem = std::move(stem);
  t.axis = axis;
  t.grid = std::move(grid);
  t.terminals = std::move(terminals);
  t.fixed = std::move(fixed);
  t.series = std::move(series);
  return t;
}

TableSpec blp_table(std::string stem, Settings fixed) {
  TableSpec t;
  t.stem = std::move(stem);
  t.kind = TableKind::Blp;
  t.terminals = {Terminal::L, Terminal::M, Terminal::R};
  t.quantities = {"D", "sigma_plus"};
  t.fixed = std::move(fixed);
  return t;
}

std::vector<Scenario> build_registry() {
  using enum Terminal;
  const auto temps = linear_grid(0.5, 20.0, 0.5);
  const auto times = linear_grid(0.0, 5.0, 0.01);
  const auto couplings = linear_grid(3.5, 4.5, 0.01);
  const SeriesSpec eps{"model.env.epsilon", kEpsilons};
  const SeriesSpec presets{"model.coupling.preset", {"symmetric", "asymmetric"}};
  const Settings nonlinear{{"model.env.kind", "qutrit-nonlinear"}};
  constexpr auto T = SweepAxis::ModulatingTemperature;
  constexpr auto Time = SweepAxis::Time;
  constexpr auto G = SweepAxis::Coupling;

  std::vector<Scenario> r;
  {
    TableSpec t = sweep_table("fig2", T, temps, {L, R});
    t.quantities = {"currents", "derivatives"};
    r.push_back({"fig2", "heat currents and their T_M derivatives vs T_M at t = 1", {}, {t}});
  }
  r.push_back({"fig3", "alpha_L vs T_M at t = 1 for g in {3.5, 4, 4.5}", {},
               {sweep_table("fig3", T, temps, {L}, {}, SeriesSpec{"model.g", {"3.5", "4", "4.5"}})}});
  r.push_back({"fig4", "alpha_L and alpha_R vs t at T_M = 10", {{"model.env.T_M", "10"}},
               {sweep_table("fig4", Time, times, {L, R})}});
  r.push_back({"fig5", "alpha_L vs g at t = 1", {}, {sweep_table("fig5", G, couplings, {L})}});
  r.push_back({"fig6", "right terminal detached: alpha vs t, and vs g at t = 0.7",
               {{"model.env.detached", "R"}, {"model.env.T_M", "8"}},
               {sweep_table("fig6_time", Time, times, {L, R}),
                sweep_table("fig6_coupling", G, couplings, {L, R}, {{"time", "0.7"}})}});
  r.push_back({"fig7", "left terminal detached: alpha vs t, and vs g at t = 0.7",
               {{"model.env.detached", "L"}, {"model.env.T_M", "8"}},
               {sweep_table("fig7_time", Time, times, {L, R}),
                sweep_table("fig7_coupling", G, couplings, {L, R}, {{"time", "0.7"}})}});
  r.push_back({"fig8", "symmetric and asymmetric couplings: alpha vs T_M at t = 0.4, and vs t at T_M = 10", {},
               {sweep_table("fig8_temperature", T, temps, {L, R}, {{"time", "0.4"}}, presets),
                sweep_table("fig8_time", Time, times, {L, R}, {{"model.env.T_M", "10"}}, presets)}});
  r.push_back({"fig9", "nonlinear ancillas: alpha_L vs T_M at t = 1 per epsilon", nonlinear,
               {sweep_table("fig9", T, temps, {L}, {}, eps)}});
  r.push_back({"fig10", "nonlinear ancillas: alpha_L vs t at T_M = 10 per epsilon", nonlinear,
               {sweep_table("fig10", Time, times, {L}, {{"model.env.T_M", "10"}}, eps)}});
  r.push_back({"fig11", "nonlinear ancillas with symmetric and asymmetric couplings: alpha_L vs T_M at t = 0.4",
               nonlinear,
               {sweep_table("fig11_symmetric", T, temps, {L}, {{"model.coupling.preset", "symmetric"}, {"time", "0.4"}},
                            eps),
                sweep_table("fig11_asymmetric", T, temps, {L},
                            {{"model.coupling.preset", "asymmetric"}, {"time", "0.4"}}, eps)}});
  r.push_back({"fig12", "BLP trace distance per qubit for baseline, symmetric and asymmetric couplings", {},
               {blp_table("fig12_baseline", {{"model.coupling.preset", "baseline"}}),
                blp_table("fig12_symmetric", {{"model.coupling.preset", "symmetric"}}),
                blp_table("fig12_asymmetric", {{"model.coupling.preset", "asymmetric"}})}});
  r.push_back({"fig13", "qubit ancillas: alpha vs t at T_M = 10, and vs T_M at t = 9.7",
               {{"model.env.kind", "qubit"}, {"model.env.T_M", "10"}},
               {sweep_table("fig13_time", Time, linear_grid(0.0, 10.0, 0.01), {L, R}),
                sweep_table("fig13_temperature", T, linear_grid(1.0, 20.0, 0.5), {L, R}, {{"time", "9.7"}})}});
  r.push_back({"appendixA", "two-qubit device: alpha = dJ_R/dJ_L vs T_L, unequal and equal qubit frequencies",
               {{"model.n_system_qubits", "2"},
                {"model.coupling.preset", "two_qubit"},
                {"model.coupling.lr", "5"},
                {"model.env.delta", "5"},
                {"model.env.T_R", "4"},
                {"model.modulating", "L"},
                {"model.divergence_tol", "1e-14"}},
               {sweep_table("appendixA_unequal", T, linear_grid(0.2, 6.0, 0.02), {R}),
                sweep_table("appendixA_equal", T, linear_grid(0.2, 6.0, 0.02), {R}, {{"model.coupling.omega_R", "1"}})}});
  return r;
}

std::string last_component(const std::string& key) {
  const auto dot = key.rfind('.');
  return dot == std::string::npos ? key : key.substr(dot + 1);
}

std::string sanitize(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return s;
}

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".part";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

struct Table {
  std::string text;
  std::size_t rows = 0;
  std::size_t failed = 0;
  ordered_json results;
};

RunConfig table_config(const RunConfig& base, const TableSpec& spec, const std::string* series_value,
                       const std::string& series_key) {
  RunConfig c = base;
  for (const auto& [k, v] : spec.fixed) apply_setting(c, k, v);
  if (series_value) apply_setting(c, series_key, *series_value);
  return c;
}

Table render_sweep(const RunConfig& config, const TableSpec& spec, const RunHooks& hooks) {
  std::vector<std::string> labels;
  if (spec.series) {
    labels = spec.series->values;
  } else {
    labels.emplace_back();
  }
  std::vector<SweepResult> results;
  std::vector<ModelConfig> models;
  for (const std::string& label : labels) {
    const RunConfig c = table_config(config, spec, spec.series ? &label : nullptr,
                                     spec.series ? spec.series->key : std::string());
    validate(c);
    if (hooks.log) {
      std::string msg = spec.stem + ": " + std::to_string(spec.grid.size()) + " points";
      if (spec.series) msg += " at " + last_component(spec.series->key) + "=" + label;
      hooks.log(msg);
    }
    SweepOptions opts = c.sweep_options();
    opts.terminals = spec.terminals;
    models.push_back(c.model());
    results.push_back(sweep(models.back(), spec.axis, spec.grid, opts));
  }

  const SweepResult& first = results.front();
  const std::string mod(to_string(first.modulating));
  const std::vector<Terminal> present = models.front().terminals();
  auto want = [&](const char* q) { return std::find(spec.quantities.begin(), spec.quantities.end(), q) != spec.quantities.end(); };

  std::ostringstream out;
  out << "# " << first.axis_name << " (" << first.axis_unit << ")";
  for (std::size_t s = 0; s < labels.size(); ++s) {
    const std::string suffix = spec.series ? "@" + last_component(spec.series->key) + "=" + labels[s] : "";
    if (want("currents")) {
      for (Terminal t : present) out << ",J_" << to_string(t) << suffix << " (hbar/t~^2)";
    }
    if (want("derivatives")) {
      for (Terminal t : present) out << ",dJ" << to_string(t) << "_dT" << mod << suffix << " (k_B/t~)";
    }
    if (want("alpha")) {
      for (Terminal t : results[s].terminals) out << ",alpha_" << to_string(t) << suffix << " (dimensionless)";
    }
  }
  out << ",error\n";

  Table table;
  for (std::size_t i = 0; i < spec.grid.size(); ++i) {
    out << format_number(spec.grid[i]);
    std::string errors;
    for (std::size_t s = 0; s < labels.size(); ++s) {
      const SweepRecord& rec = results[s].records[i];
      const bool ok = rec.ok();
      if (!ok) {
        ++table.failed;
        if (!errors.empty()) errors += "; ";
        if (spec.series) errors += last_component(spec.series->key) + "=" + labels[s] + ": ";
        errors += sanitize(rec.error);
      }
      auto value = [&](double v) { return ok ? format_number(v) : std::string("nan"); };
      if (want("currents")) {
        for (Terminal t : present) out << ',' << value(rec.currents[index_of(t)]);
      }
      if (want("derivatives")) {
        for (Terminal t : present) out << ',' << value(rec.derivatives[index_of(t)]);
      }
      if (want("alpha")) {
        for (Terminal t : results[s].terminals) {
          const auto& a = rec.alpha[index_of(t)];
          out << ',' << (!ok ? std::string("nan") : a ? format_number(*a) : std::string("diverged"));
        }
      }
    }
    out << ',' << errors << '\n';
    ++table.rows;
  }
  table.text = out.str();
  return table;
}

Table render_blp(const RunConfig& config, const TableSpec& spec, const RunHooks& hooks) {
  const RunConfig c = table_config(config, spec, nullptr, {});
  validate(c);
  const ModelConfig model = c.model();
  SearchConfig search = c.blp.search;
  search.workers = c.workers;

  Table table;
  std::vector<Terminal> terminals;
  for (Terminal t : spec.terminals) {
    if (model.has_terminal(t)) terminals.push_back(t);
  }
  std::vector<std::optional<BLPResult>> found(terminals.size());
  ordered_json results = ordered_json::object();
  for (std::size_t k = 0; k < terminals.size(); ++k) {
    const std::string name(to_string(terminals[k]));
    if (hooks.log) hooks.log(spec.stem + ": BLP search for qubit " + name);
    ordered_json entry;
    try {
      found[k] = blp_measure(model, terminals[k], c.blp.t_max, search);
      const BLPResult& r = *found[k];
      entry["N"] = r.value;
      entry["optimal_pair"] = {{"theta1", r.optimal_pair.first.theta},
                               {"phi1", r.optimal_pair.first.phi},
                               {"theta2", r.optimal_pair.second.theta},
                               {"phi2", r.optimal_pair.second.phi}};
      ordered_json windows = ordered_json::array();
      for (const auto& w : r.growth_windows) windows.push_back({w[0], w[1]});
      entry["growth_windows"] = windows;
    } catch (const std::exception& e) {
      ++table.failed;
      entry["error"] = e.what();
    }
    results[name] = entry;
  }
  table.results = results;

  const std::vector<double>* times = nullptr;
  for (const auto& f : found) {
    if (f) times = &f->times;
  }
  std::ostringstream out;
  out << "# t (t~)";
  for (Terminal t : terminals) out << ",D_" << to_string(t) << " (dimensionless)";
  for (Terminal t : terminals) out << ",sigma_plus_" << to_string(t) << " (1/t~)";
  out << ",error\n";
  std::string errors;
  for (std::size_t k = 0; k < terminals.size(); ++k) {
    if (!found[k]) {
      if (!errors.empty()) errors += "; ";
      errors += std::string(to_string(terminals[k])) + ": " + sanitize(results[std::string(to_string(terminals[k]))]["error"]);
    }
  }
  if (times) {
    for (std::size_t i = 0; i < times->size(); ++i) {
      out << format_number((*times)[i]);
      for (const auto& f : found) out << ',' << (f ? format_number(f->distance_series[i]) : std::string("nan"));
      for (const auto& f : found) {
        if (!f) {
          out << ",nan";
          continue;
        }
        double sigma = 0.0;
        if (i > 0) {
          const double rate = (f->distance_series[i] - f->distance_series[i - 1]) / ((*times)[i] - (*times)[i - 1]);
          sigma = f->distance_series[i] - f->distance_series[i - 1] > search.increment_floor ? rate : 0.0;
        }
        out << ',' << format_number(sigma);
      }
      out << ',' << errors << '\n';
      ++table.rows;
    }
  }
  table.text = out.str();
  return table;
}

}  // namespace

const std::vector<Scenario>& scenario_registry() {
  static const std::vector<Scenario> registry = build_registry();
  return registry;
}

const Scenario* find_scenario(std::string_view name) {
  for (const Scenario& s : scenario_registry()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

std::vector<TableSpec> planned_tables(const RunConfig& config) {
  if (config.scenario) {
    const Scenario* s = find_scenario(*config.scenario);
    if (!s) throw ConfigError("scenario: unknown scenario '" + *config.scenario + "'");
    return s->tables;
  }
  if (!config.sweep) throw ConfigError("scenario: a run needs a scenario or a sweep section");
  TableSpec t;
  t.stem = "sweep";
  t.axis = config.sweep->axis;
  t.grid = config.sweep->grid;
  t.terminals = config.sweep->terminals;
  t.quantities = config.sweep->quantities;
  t.series = config.sweep->series;
  return {t};
}

RunOutcome execute(const RunConfig& config, const RunHooks& hooks) {
  validate(config);
  if (config.output_dir.empty()) throw ConfigError("output.dir: an output directory is required");
  const auto start = std::chrono::steady_clock::now();
  const fs::path dir(config.output_dir);
  fs::create_directories(dir);
  const fs::path manifest = dir / "manifest.json";
  // A stale manifest would mark a partial rerun as complete.
  fs::remove(manifest);

  RunOutcome outcome;
  outcome.output_dir = dir.string();
  ordered_json results = ordered_json::object();
  for (const TableSpec& spec : planned_tables(config)) {
    Table table = spec.kind == TableKind::Blp ? render_blp(config, spec, hooks) : render_sweep(config, spec, hooks);
    const std::string name = spec.stem + ".csv";
    write_file(dir / name, table.text);
    outcome.files.push_back({name, sha256_hex(table.text), table.text.size(), table.rows});
    outcome.failed_points += table.failed;
    if (!table.results.is_null()) results[spec.stem] = table.results;
  }
  outcome.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  ordered_json m;
  m["artifact"] = "wtt";
  m["version"] = WTT_VERSION;
  m["created"] = utc_now();
  m["scenario"] = config.scenario ? ordered_json(*config.scenario) : ordered_json(nullptr);
  m["parameters"] = ordered_json::parse(parameters_json(config));
  ordered_json files = ordered_json::array();
  for (const OutputFile& f : outcome.files) {
    files.push_back({{"name", f.name}, {"sha256", f.sha256}, {"bytes", f.bytes}, {"rows", f.rows}});
  }
  m["files"] = files;
  m["failed_points"] = outcome.failed_points;
  m["wall_clock_seconds"] = outcome.wall_seconds;
  m["results"] = results;
  m["status"] = outcome.failed_points == 0 ? "ok" : "partial";
  write_file(manifest, m.dump(2) + "\n");
  outcome.manifest_path = manifest.string();
  return outcome;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;  // folds -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xf]);
  }
  return out;
}

}  // namespace wtt
