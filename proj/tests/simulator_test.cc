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

#include <cmath>

#include <gtest/gtest.h>

#include "rosbid/errors.h"
#include "rosbid/experiment.h"
#include "rosbid/output.h"

namespace rosbid {
namespace {

TrialSpec Spec(PolicyKind kind, int64_t horizon, uint64_t seed,
               std::optional<double> rho = std::nullopt) {
  TrialSpec s;
  s.kind = kind;
  s.horizon = horizon;
  s.seed = seed;
  s.policy.rho = rho;
  return s;
}

TEST(RunTrialTest, TruthfulNeverViolates) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    TrialSpec s = Spec(PolicyKind::kTruthfulBaseline, 300, seed);
    s.distribution = LinearAllocationUniform{};
    EXPECT_GE(RunTrial(s).metrics.ros_slack, 0.0);
    s.distribution = UniformSecondPrice{};
    EXPECT_GE(RunTrial(s).metrics.ros_slack, 0.0);
  }
}

TEST(RunTrialTest, ApproxRosWithinAllowance) {
  TrialSpec s = Spec(PolicyKind::kApproxRos, 10000, 17);
  s.oracle = OracleMode::kNone;
  const TrialMetrics m = RunTrial(s).metrics;
  EXPECT_GE(m.ros_slack, -2.0 * 100.0 * std::log(10000.0));
  EXPECT_FALSE(m.opt_value.has_value());
}

TEST(RunTrialTest, StrictBothRespectsBoth) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    const TrialMetrics m =
        RunTrial(Spec(PolicyKind::kStrictBoth, 1000, seed, 0.25)).metrics;
    EXPECT_LE(m.total_spend, 250.0);
    EXPECT_GE(m.ros_slack, 0.0);
  }
}

TEST(RunTrialTest, MetricsAgreeWithTrajectory) {
  TrialSpec s = Spec(PolicyKind::kApproxRosStrictBudget, 400, 3, 0.1);
  s.record_trajectory = true;
  const TrialResult r = RunTrial(s);
  ASSERT_EQ(r.trajectory.size(), 400u);
  double reward = 0, slack = 0, spend = 0, max_mu = 0;
  std::optional<int64_t> stop;
  for (const StepOutcome& o : r.trajectory) {
    reward += o.value * o.allocation;
    slack += o.g;
    spend += o.price;
    max_mu = std::max(max_mu, o.mu);
    if (!stop && spend + 1.0 >= 40.0) stop = o.t;
  }
  EXPECT_EQ(r.metrics.reward, reward);
  EXPECT_EQ(r.metrics.ros_slack, slack);
  EXPECT_EQ(r.metrics.total_spend, spend);
  EXPECT_GE(r.metrics.max_mu, max_mu);
  EXPECT_EQ(r.metrics.stopping_time, stop);
  EXPECT_EQ(*r.metrics.regret_sample,
            *r.metrics.opt_value - r.metrics.reward);
  EXPECT_EQ(r.metrics.oracle_method, OracleMethod::kFractionalLp);
}

TEST(RunTrialTest, FeasibleRunsNeverBeatExactOptimum) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    for (PolicyKind k : {PolicyKind::kApproxRos, PolicyKind::kStrictRos,
                         PolicyKind::kApproxRosStrictBudget,
                         PolicyKind::kStrictBoth,
                         PolicyKind::kSquaredApproxRos,
                         PolicyKind::kTruthfulBaseline}) {
      const TrialMetrics m = RunTrial(Spec(k, 20, seed, 0.3)).metrics;
      ASSERT_EQ(m.oracle_method, OracleMethod::kExactEnumeration);
      const bool within_budget = !IsBudgeted(k) || m.total_spend <= 6.0;
      if (m.ros_slack >= 0.0 && within_budget) {
        EXPECT_GE(*m.regret_sample, -1e-12) << PolicyName(k) << " " << seed;
      }
    }
  }
}

TEST(RunTrialTest, LinearAuctionsUseDualBound) {
  TrialSpec s = Spec(PolicyKind::kApproxRos, 200, 1);
  s.distribution = LinearAllocationUniform{};
  const TrialMetrics m = RunTrial(s).metrics;
  EXPECT_EQ(m.oracle_method, OracleMethod::kLagrangianDual);
  EXPECT_GE(*m.regret_sample, 0.0);  // feasible-or-not, a bound stays above
}

TEST(RunTrialTest, TargetRosScalesValues) {
  TrialSpec s = Spec(PolicyKind::kTruthfulBaseline, 50, 2);
  s.distribution = UniformSecondPrice{0.0, 0.5, 0.0, 1.0};
  s.target_ros = 0.5;
  s.record_trajectory = true;
  const TrialResult r = RunTrial(s);
  const auto raw = GenerateStream(s.distribution, 50, 2);
  for (size_t i = 0; i < raw.size(); ++i) {
    EXPECT_EQ(r.trajectory[i].value, raw[i].value / 0.5);
  }
  s.target_ros = 0.4;  // 0.5 / 0.4 > 1
  EXPECT_THROW(RunTrial(s), ConfigError);
}

ExperimentConfig SmallConfig() {
  ExperimentConfig c;
  c.policy = PolicyKind::kApproxRos;
  c.horizons = {30, 100};
  c.trials = 12;
  c.seed = 99;
  c.beta_samples = 1000;
  return c;
}

TEST(ExperimentTest, SingleTrialSingleHorizon) {
  ExperimentConfig c = SmallConfig();
  c.horizons = {1};
  c.trials = 1;
  const ExperimentReport r = RunExperiment(c, 1);
  ASSERT_EQ(r.horizons.size(), 1u);
  EXPECT_EQ(r.horizons[0].trials.size(), 1u);
  EXPECT_FALSE(r.slope.has_value());
}

TEST(ExperimentTest, ThreadCountDoesNotChangeResults) {
  ExperimentConfig c = SmallConfig();
  c.emit_trajectories = true;
  const ExperimentReport a = RunExperiment(c, 1);
  const ExperimentReport b = RunExperiment(c, 4);
  EXPECT_EQ(SummaryJson(a), SummaryJson(b));
  for (size_t h = 0; h < a.horizons.size(); ++h) {
    EXPECT_EQ(TrialsCsv(a.horizons[h], c.policy),
              TrialsCsv(b.horizons[h], c.policy));
    for (size_t i = 0; i < a.horizons[h].trajectories.size(); ++i) {
      EXPECT_EQ(TrajectoryCsv(a.horizons[h].trajectories[i]),
                TrajectoryCsv(b.horizons[h].trajectories[i]));
    }
  }
}

TEST(ExperimentTest, TrialSeedsSharedAcrossHorizons) {
  const ExperimentReport r = RunExperiment(SmallConfig(), 1);
  EXPECT_EQ(r.horizons[0].seeds, r.horizons[1].seeds);
  EXPECT_EQ(r.horizons[0].seeds[3], TrialSeed(99, 3));
}

TEST(ExperimentTest, AggregatesMatchTrials) {
  const ExperimentReport r = RunExperiment(SmallConfig(), 1);
  const HorizonReport& h = r.horizons[1];
  double sum = 0;
  for (const TrialMetrics& m : h.trials) sum += *m.regret_sample;
  EXPECT_DOUBLE_EQ(*h.mean_regret, sum / 12.0);
  double ss = 0;
  for (const TrialMetrics& m : h.trials) {
    ss += std::pow(*m.regret_sample - *h.mean_regret, 2);
  }
  EXPECT_NEAR(*h.std_regret, std::sqrt(ss / 11.0), 1e-12);
  ASSERT_TRUE(r.slope.has_value());
}

TEST(ExperimentTest, LowBetaWarns) {
  ExperimentConfig c = SmallConfig();
  c.distribution = UniformSecondPrice{0.0, 0.3, 0.2, 1.0};
  const ExperimentReport r = RunExperiment(c, 1);
  EXPECT_LT(r.beta_hat, kLowBetaWarning);
  EXPECT_EQ(r.warnings.size(), 1u);
}

TEST(ExperimentTest, Validation) {
  ExperimentConfig c = SmallConfig();
  c.trials = 0;
  EXPECT_THROW(RunExperiment(c), ConfigError);
  c = SmallConfig();
  c.horizons = {100, 30};
  EXPECT_THROW(RunExperiment(c), ConfigError);
  c = SmallConfig();
  c.policy = PolicyKind::kStrictBoth;
  EXPECT_THROW(RunExperiment(c), ConfigError);
}

TEST(LogLogSlopeTest, RecoversPowerLaw) {
  const std::vector<double> x = {100, 400, 1600, 6400};
  std::vector<double> y;
  for (double t : x) y.push_back(3.0 * std::pow(t, 0.5));
  EXPECT_NEAR(*LogLogSlope(x, y), 0.5, 1e-12);
  EXPECT_FALSE(LogLogSlope({100}, {1}).has_value());
  EXPECT_FALSE(LogLogSlope({100, 200}, {1, 0}).has_value());
}

}  // namespace
}  // namespace rosbid
