// Copyright 2026 Google LLC
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

// rosbid: run auto-bidding simulations from a YAML config.
//
//   rosbid run   --config exp.yaml [--out DIR] [--threads N]
//   rosbid sweep --config exp.yaml [--out DIR] [--threads N]
//   rosbid check [--suite NAME] [--inject-broken-custom]
//
// Exit codes: 0 ok, 1 config error, 2 runtime error, 3 check failure.

#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "rosbid/check.h"
#include "rosbid/config.h"
#include "rosbid/errors.h"
#include "rosbid/experiment.h"
#include "rosbid/output.h"
#include "rosbid/version.h"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitCheckFailed = 3;

struct RunArgs {
  std::string config_path;
  std::string out_dir;
  int threads = 0;
};

int RunExperimentCommand(const RunArgs& args, bool sweep) {
  rosbid::ExperimentConfig config;
  try {
    config = rosbid::LoadConfig(args.config_path);
    rosbid::ApplyEnvironmentOverrides(config);
    if (!args.out_dir.empty()) config.output_dir = args.out_dir;
  } catch (const rosbid::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    const rosbid::ExperimentReport report =
        rosbid::RunExperiment(config, args.threads);
    rosbid::WriteReport(report, config.output_dir, sweep);
    rosbid::PrintReport(report, std::cout);
    for (const std::string& w : report.warnings) {
      std::cerr << "warning: " << w << "\n";
    }
  } catch (const rosbid::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}

int CheckCommand(const std::string& suite, bool inject_broken) {
  rosbid::CheckOptions options;
  if (!suite.empty()) options.suite = suite;
  options.inject_broken_custom = inject_broken;
  std::vector<rosbid::SuiteResult> results;
  try {
    results = rosbid::RunChecks(options);
  } catch (const rosbid::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  bool ok = true;
  for (const rosbid::SuiteResult& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail
              << "\n";
    if (!r.passed) {
      ok = false;
      std::cerr << "suite failed: " << r.name << "\n";
    }
  }
  return ok ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online auto-bidding under return-on-spend and budget "
               "constraints"};
  app.set_version_flag("--version", std::string(rosbid::kVersion));
  app.require_subcommand(1);

  const int cores =
      static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  RunArgs run_args{"", "", cores};
  RunArgs sweep_args{"", "", cores};
  auto add_run_flags = [](CLI::App* cmd, RunArgs& a) {
    cmd->add_option("--config", a.config_path, "Experiment config (YAML)")
        ->required();
    cmd->add_option("--out", a.out_dir, "Output directory (overrides config)");
    cmd->add_option("--threads", a.threads, "Worker threads")
        ->check(CLI::PositiveNumber);
  };
  CLI::App* run = app.add_subcommand("run", "Run every horizon of a config");
  add_run_flags(run, run_args);
  CLI::App* sweep =
      app.add_subcommand("sweep", "Run and fit regret across horizons");
  add_run_flags(sweep, sweep_args);

  std::string suite;
  bool inject_broken = false;
  CLI::App* check = app.add_subcommand("check", "Run numerical self-checks");
  check->add_option("--suite", suite, "Run only this suite");
  check->add_flag("--inject-broken-custom", inject_broken,
                  "Add a non-truthful custom auction to the truthfulness "
                  "suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (*run) return RunExperimentCommand(run_args, /*sweep=*/false);
  if (*sweep) return RunExperimentCommand(sweep_args, /*sweep=*/true);
  return CheckCommand(suite, inject_broken);
}
