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


// Drives the installed command line through std::system and checks the exit
// status policy: 0 success, 1 failed points, 2 rejected configuration.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
  const std::string cmd = std::string(WTT_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("wtt_cli_" + name);
  fs::remove_all(p);
  return p;
}

TEST(Cli, ListsScenarios) { EXPECT_EQ(run("scenarios"), 0); }

TEST(Cli, RejectedConfigsExitTwo) {
  EXPECT_EQ(run("run --scenario fig99 --out /tmp/wtt_cli_x"), 2);
  EXPECT_EQ(run("run --scenario fig2 --set model.env.T_M=-1 --out /tmp/wtt_cli_x"), 2);
  EXPECT_EQ(run("run --scenario fig2 --scenario fig3"), 2);
  EXPECT_EQ(run("bogus"), 2);
  EXPECT_EQ(run("validate --config /nonexistent.yaml"), 2);
}

TEST(Cli, ConfigRunAndEnvironmentDefault) {
  const fs::path dir = scratch("env");
  const fs::path cfg = scratch("cfg.yaml");
  std::ofstream(cfg) << "sweep:\n  axis: t\n  grid: [0.5, 1.0]\n";
  EXPECT_EQ(run("validate --config " + cfg.string()), 0);
  const std::string env = "WTT_OUTPUT_DIR=" + dir.string() + " ";
  const int status = std::system((env + WTT_CLI + " run -q --config " + cfg.string() + " >/dev/null").c_str());
  EXPECT_EQ(WEXITSTATUS(status), 0);
  EXPECT_TRUE(fs::exists(dir / "sweep.csv"));
  EXPECT_TRUE(fs::exists(dir / "manifest.json"));
  // Without --out, output.dir or the environment variable there is nowhere to write.
  EXPECT_EQ(run("run --config " + cfg.string()), 2);
}

}  // namespace
