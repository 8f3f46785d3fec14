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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rosbid/distribution.h"
#include "rosbid/policy.h"
#include "rosbid/simulator.h"

namespace rosbid {

struct ExperimentConfig {
  PolicyKind policy = PolicyKind::kApproxRos;
  Distribution distribution = UniformSecondPrice{};
  std::vector<int64_t> horizons = {1000};  // strictly ascending
  int64_t trials = 1;
  std::optional<double> rho;
  double target_ros = 1.0;
  uint64_t seed = 0;
  std::optional<double> alpha_override;
  std::optional<double> eta_override;
  double bid_cap = 2.0;
  bool intermingled = false;
  OracleMode oracle = OracleMode::kAuto;
  int64_t beta_samples = 100000;
  std::string output_dir = "out";
  bool emit_trajectories = false;

  PolicyOptions policy_options() const;
};

// Throws ConfigError on any inconsistency.
void ValidateConfig(const ExperimentConfig& config);

// Per-trial stream seed; shared by every horizon of an experiment.
uint64_t TrialSeed(uint64_t master_seed, int64_t trial);

// beta_hat below this triggers a warning (never a failure).
inline constexpr double kLowBetaWarning = 0.05;

struct HorizonReport {
  int64_t horizon = 0;
  std::vector<uint64_t> seeds;
  std::vector<TrialMetrics> trials;
  std::vector<std::vector<StepOutcome>> trajectories;  // if requested
  std::optional<OracleMethod> oracle_method;

  // Aggregates; regret ones are empty when no oracle ran.
  std::optional<double> mean_regret;
  std::optional<double> std_regret;  // sample stddev (n - 1); 0 for n = 1
  std::optional<double> mean_positive_regret;
  double mean_reward = 0.0;
  double mean_violation = 0.0;  // mean of max(0, -sum g)
  double max_violation = 0.0;
  double mean_ros_deficit = 0.0;  // mean of -sum g, unclipped
  double mean_spend = 0.0;
  int64_t ros_violations = 0;     // trials with sum g < 0
  int64_t budget_violations = 0;  // trials with spend > rho T
  std::optional<double> mean_first_phase;
  std::optional<int64_t> max_first_phase;
  int64_t first_phase_below_horizon = 0;  // trials with K < T
  double max_mu = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<HorizonReport> horizons;
  double beta_hat = 0.0;
  // Least-squares slope of log(mean positive regret) on log T.
  std::optional<double> slope;
  std::vector<std::string> warnings;
};

// Runs trials x horizons on `threads` workers (0 = hardware concurrency).
// Results do not depend on the thread count.
ExperimentReport RunExperiment(const ExperimentConfig& config,
                               int threads = 0);

// nullopt for fewer than two points or any non-positive y.
std::optional<double> LogLogSlope(const std::vector<double>& x,
                                  const std::vector<double>& y);

}  // namespace rosbid
