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

// Declarative run configuration. Documents are YAML (JSON is accepted as a
// subset, including a run manifest whose "parameters" block is used). Values
// are resolved in layers: built-in defaults, scenario defaults, the document,
// then command-line overrides "key=value" with dotted keys.

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wtt/metrics.hpp"
#include "wtt/model.hpp"
#include "wtt/nonmarkov.hpp"

namespace wtt {

/// Rejected configuration. The message carries "source:line:column: " when known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coupling preset plus explicit per-field overrides applied after it.
struct CouplingSpec {
  std::string preset = "baseline";
  double delta = 3.0;
  double skew = 0.1;
  double lr = 5.0;
  std::optional<double> omega_L, omega_M, omega_R, omega_ML, omega_MR, omega_LR;

  CouplingConfig resolve() const;
};

/// A second sweep dimension rendered as one column group per value.
struct SeriesSpec {
  /// Dotted configuration key, e.g. "model.g" or "model.env.detached".
  std::string key;
  /// Raw scalar values as written; applied through the same setters as the document.
  std::vector<std::string> values;
};

struct SweepSpec {
  SweepAxis axis = SweepAxis::ModulatingTemperature;
  std::vector<double> grid;
  std::vector<Terminal> terminals;
  /// Any of "currents", "derivatives", "alpha".
  std::vector<std::string> quantities{"alpha"};
  std::optional<SeriesSpec> series;
};

struct BlpSettings {
  SearchConfig search;
  double t_max = 3.0;
};

struct RunConfig {
  /// Physical model before preset resolution; see model().
  ModelConfig base;
  CouplingSpec coupling;
  std::optional<std::string> scenario;
  std::optional<SweepSpec> sweep;
  /// Evaluation time for sweeps over every axis except t.
  double time = 1.0;
  Terminal modulating = Terminal::M;
  double divergence_tol = 1e-8;
  BlpSettings blp;
  std::string output_dir;
  int workers = 1;

  /// Resolved model with the coupling preset applied.
  ModelConfig model() const;
  AmplificationOptions amplification_options() const;
  SweepOptions sweep_options() const;
};

/// Parses a document and applies overrides ("dotted.key=value"). Validates the
/// result. Throws ConfigError with line-precise diagnostics.
RunConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {},
                       std::string_view source = "<config>");

/// Scenario defaults plus overrides; equivalent to a document naming the scenario.
RunConfig scenario_config(std::string_view scenario, const std::vector<std::string>& overrides = {});

/// Sets one dotted key from a YAML scalar/sequence/map written as text.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Checks every invariant; throws ConfigError.
void validate(const RunConfig& config);

/// Full resolved parameter set as a JSON document; parse_config of the text
/// reproduces `config`.
std::string parameters_json(const RunConfig& config);

/// Every accepted dotted key with a one-line description, for documentation.
std::vector<std::pair<std::string, std::string>> config_keys();

}  // namespace wtt
