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

#include "rosbid/simulator.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rosbid/errors.h"

namespace rosbid {
namespace {

double LogLambda(double lambda) {
  return lambda > 0.0 ? std::log(lambda)
                      : -std::numeric_limits<double>::infinity();
}

}  // namespace

double TrialMetrics::ros_violation() const {
  return std::max(0.0, -ros_slack);
}

TrialResult RunTrialOnStream(PolicyKind kind, const PolicyOptions& options,
                             const std::vector<Query>& stream,
                             OracleMode oracle, bool record_trajectory) {
  const int64_t horizon = static_cast<int64_t>(stream.size());
  PolicyState state = InitialPolicyState(kind, horizon, options);
  TrialResult result;
  TrialMetrics& m = result.metrics;
  if (record_trajectory) result.trajectory.reserve(stream.size());

  m.max_mu = state.duals.mu;
  m.max_lambda_exponent = LogLambda(state.duals.lambda);
  const bool budgeted = IsBudgeted(kind);
  for (const Query& query : stream) {
    if (state.phase == Phase::kExited) break;
    auto [outcome, next] = PolicyStep(std::move(state), query);
    state = std::move(next);
    m.reward += query.value * outcome.allocation;
    m.ros_slack += outcome.g;
    m.total_spend += outcome.price;
    m.max_mu = std::max({m.max_mu, outcome.mu, state.duals.mu});
    m.max_lambda_exponent = std::max(
        {m.max_lambda_exponent, LogLambda(outcome.lambda),
         LogLambda(state.duals.lambda)});
    if (budgeted && !m.stopping_time &&
        m.total_spend + 1.0 >= state.initial_budget) {
      m.stopping_time = outcome.t;
    }
    ++m.rounds_played;
    if (record_trajectory) result.trajectory.push_back(outcome);
  }
  m.first_phase_length = state.first_phase_length;

  if (oracle == OracleMode::kAuto) {
    const OracleResult opt =
        OptAuto(stream, budgeted ? options.rho : std::nullopt);
    m.opt_value = opt.opt_value;
    m.regret_sample = opt.opt_value - m.reward;
    m.oracle_method = opt.method;
  }
  return result;
}

TrialResult RunTrial(const TrialSpec& spec) {
  if (!(spec.target_ros > 0.0 && std::isfinite(spec.target_ros))) {
    throw ConfigError("target_ros must be positive");
  }
  if (ValueSupportMax(spec.distribution) / spec.target_ros > 1.0) {
    throw ConfigError("values divided by target_ros must stay within [0, 1]");
  }
  std::vector<Query> stream =
      GenerateStream(spec.distribution, spec.horizon, spec.seed);
  if (spec.target_ros != 1.0) {
    for (Query& q : stream) q.value /= spec.target_ros;
  }
  return RunTrialOnStream(spec.kind, spec.policy, stream, spec.oracle,
                          spec.record_trajectory);
}

}  // namespace rosbid
