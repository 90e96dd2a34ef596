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

// Named figure recipes and the executor that turns a RunConfig into CSV tables
// plus a manifest.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wtt/config.hpp"

namespace wtt {

enum class TableKind { Sweep, Blp };

/// One output table. Sweep tables hold every series value as a column group;
/// BLP tables write one file per series value.
struct TableSpec {
  std::string stem;
  TableKind kind = TableKind::Sweep;
  SweepAxis axis = SweepAxis::ModulatingTemperature;
  std::vector<double> grid;
  std::vector<Terminal> terminals;
  std::vector<std::string> quantities{"alpha"};
  std::optional<SeriesSpec> series;
  /// Settings (dotted key, value) that define this table on top of the run config.
  std::vector<std::pair<std::string, std::string>> fixed;
};

struct Scenario {
  std::string name;
  std::string summary;
  /// Settings applied before the user's document and overrides.
  std::vector<std::pair<std::string, std::string>> defaults;
  std::vector<TableSpec> tables;
};

const std::vector<Scenario>& scenario_registry();
/// nullptr when unknown.
const Scenario* find_scenario(std::string_view name);

struct OutputFile {
  std::string name;
  std::string sha256;
  std::size_t bytes = 0;
  std::size_t rows = 0;
};

struct RunOutcome {
  std::string output_dir;
  std::vector<OutputFile> files;
  std::size_t failed_points = 0;
  std::string manifest_path;
  double wall_seconds = 0.0;

  /// 0 when every point succeeded, 1 otherwise.
  int exit_code() const { return failed_points == 0 ? 0 : 1; }
};

struct RunHooks {
  /// Progress messages; may be empty.
  std::function<void(std::string_view)> log;
};

/// Tables the config resolves to: the scenario's, or one built from the sweep section.
std::vector<TableSpec> planned_tables(const RunConfig& config);

/// Computes every table, writes CSVs into config.output_dir and the manifest
/// last. Throws ConfigError for invalid configs and std::runtime_error on I/O failure.
RunOutcome execute(const RunConfig& config, const RunHooks& hooks = {});

/// 12 significant digits in scientific notation; "nan" for NaN.
std::string format_number(double v);

/// Lower-case hex SHA-256 of a byte string.
std::string sha256_hex(std::string_view data);

}  // namespace wtt
