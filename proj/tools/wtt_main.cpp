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

// wtt: run transistor scenarios and sweeps, list scenarios, check configs.
//
// Exit status: 0 all points fine, 1 some points failed (or an I/O error),
// 2 configuration rejected.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wtt/config.hpp"
#include "wtt/scenarios.hpp"

namespace {

constexpr int kExitFailedPoints = 1;
constexpr int kExitRejected = 2;
constexpr const char* kOutputEnv = "WTT_OUTPUT_DIR";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw wtt::ConfigError(path + ": cannot open");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Request {
  std::string scenario;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out;
  int workers = 0;
  bool quiet = false;
};

wtt::RunConfig resolve(const Request& req) {
  std::vector<std::string> overrides = req.overrides;
  if (req.workers > 0) overrides.push_back("workers=" + std::to_string(req.workers));
  wtt::RunConfig cfg;
  if (!req.config_path.empty()) {
    cfg = wtt::parse_config(read_file(req.config_path), overrides, req.config_path);
  } else {
    cfg = wtt::scenario_config(req.scenario, overrides);
  }
  if (!req.out.empty()) cfg.output_dir = req.out;
  if (cfg.output_dir.empty()) {
    if (const char* env = std::getenv(kOutputEnv); env && *env) cfg.output_dir = env;
  }
  return cfg;
}

int cmd_run(const Request& req) {
  wtt::RunConfig cfg = resolve(req);
  if (cfg.output_dir.empty()) {
    throw wtt::ConfigError(std::string("output.dir: no output directory (use --out, output.dir or ") + kOutputEnv + ")");
  }
  wtt::RunHooks hooks;
  if (!req.quiet) hooks.log = [](std::string_view msg) { std::cerr << "wtt: " << msg << '\n'; };
  const wtt::RunOutcome outcome = wtt::execute(cfg, hooks);
  for (const auto& f : outcome.files) std::cout << outcome.output_dir << '/' << f.name << "  " << f.rows << " rows\n";
  std::cout << outcome.manifest_path << '\n';
  if (outcome.failed_points > 0) {
    std::cerr << "wtt: " << outcome.failed_points << " point(s) failed; see the error column\n";
  }
  return outcome.exit_code();
}

int cmd_validate(const Request& req) {
  const wtt::RunConfig cfg = resolve(req);
  std::cout << "ok";
  if (cfg.scenario) std::cout << ": scenario " << *cfg.scenario;
  std::cout << '\n';
  for (const auto& t : wtt::planned_tables(cfg)) {
    std::cout << "  " << t.stem << ".csv  " << (t.kind == wtt::TableKind::Blp ? "blp" : to_string(t.axis));
    if (t.kind == wtt::TableKind::Sweep) std::cout << ", " << t.grid.size() << " points";
    if (t.series) std::cout << " x " << t.series->values.size() << " " << t.series->key;
    std::cout << '\n';
  }
  return 0;
}

int cmd_scenarios() {
  for (const auto& s : wtt::scenario_registry()) {
    std::cout << s.name << std::string(s.name.size() < 11 ? 11 - s.name.size() : 1, ' ') << s.summary << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collision-model quantum thermal transistor"};
  app.require_subcommand(1);
  app.set_version_flag("--version", WTT_VERSION_STRING);

  Request req;
  auto* run = app.add_subcommand("run", "Compute a scenario or a configured sweep");
  auto* src = run->add_option_group("source");
  src->add_option("--scenario", req.scenario, "Registered scenario name");
  src->add_option("--config", req.config_path, "YAML/JSON config file (a run manifest is accepted)")->check(CLI::ExistingFile);
  src->require_option(1);
  run->add_option("--set", req.overrides, "Override a dotted key, e.g. --set model.g=3.9")->allow_extra_args(false);
  run->add_option("--out", req.out, std::string("Output directory (default: $") + kOutputEnv + ")");
  run->add_option("--workers", req.workers, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("-q,--quiet", req.quiet, "No progress messages");

  auto* validate = app.add_subcommand("validate", "Check a config without computing");
  validate->add_option("--config", req.config_path, "Config file")->required()->check(CLI::ExistingFile);
  validate->add_option("--set", req.overrides, "Override a dotted key")->allow_extra_args(false);

  app.add_subcommand("scenarios", "List registered scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitRejected;
  }

  try {
    if (*run) return cmd_run(req);
    if (*validate) return cmd_validate(req);
    return cmd_scenarios();
  } catch (const wtt::ConfigError& e) {
    std::cerr << "wtt: config rejected: " << e.what() << '\n';
    return kExitRejected;
  } catch (const std::exception& e) {
    std::cerr << "wtt: " << e.what() << '\n';
    return kExitFailedPoints;
  }
}
