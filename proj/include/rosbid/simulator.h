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
#include <vector>

#include "rosbid/distribution.h"
#include "rosbid/oracle.h"
#include "rosbid/policy.h"

namespace rosbid {

enum class OracleMode {
  kAuto,  // exact up to kMaxExactRounds, LP bound beyond, dual bound otherwise
  kNone,  // skip the offline optimum; regret fields stay empty
};

struct TrialMetrics {
  double reward = 0.0;       // sum of v x
  double ros_slack = 0.0;    // sum of g; negative means RoS violation
  double total_spend = 0.0;  // sum of p
  std::optional<int64_t> first_phase_length;
  double max_mu = 0.0;
  double max_lambda_exponent = 0.0;  // max ln(lambda) over the run
  // First round t with spend through t plus 1 reaching the budget.
  std::optional<int64_t> stopping_time;
  std::optional<double> opt_value;
  std::optional<double> regret_sample;  // opt_value - reward
  std::optional<OracleMethod> oracle_method;
  int64_t rounds_played = 0;  // < T only when the policy exited early

  // max(0, -ros_slack).
  double ros_violation() const;
};

struct TrialSpec {
  PolicyKind kind = PolicyKind::kApproxRos;
  PolicyOptions policy;
  Distribution distribution = UniformSecondPrice{};
  int64_t horizon = 1;
  uint64_t seed = 0;
  // Values are divided by this so the constraint reads sum g >= 0.
  double target_ros = 1.0;
  OracleMode oracle = OracleMode::kAuto;
  bool record_trajectory = false;
};

struct TrialResult {
  TrialMetrics metrics;
  std::vector<StepOutcome> trajectory;  // empty unless requested
};

// Draws the stream, plays the policy over it and scores it against the
// offline optimum of the same stream.
TrialResult RunTrial(const TrialSpec& spec);

// Same, over a caller-provided stream (values already normalized).
TrialResult RunTrialOnStream(PolicyKind kind, const PolicyOptions& options,
                             const std::vector<Query>& stream,
                             OracleMode oracle, bool record_trajectory);

}  // namespace rosbid
