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

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "rosbid/check.h"
#include "rosbid/config.h"
#include "rosbid/errors.h"
#include "rosbid/output.h"

namespace rosbid {
namespace {

constexpr char kFullConfig[] = R"(
policy: strict_both
distribution:
  kind: beta_second_price
  a_v: 5
  b_v: 1
  a_d: 1
  b_d: 5
horizons: [100, 400]
trials: 3
rho: 0.25
target_ros: 1.0
seed: 18446744073709551615
alpha_override: 0.05
bid_cap: 3
oracle: none
beta_samples: 500
output_dir: results
emit_trajectories: true
)";

std::string ErrorOf(const std::string& text) {
  try {
    ParseConfig(text, "exp.yaml");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

TEST(ConfigTest, ParsesEveryField) {
  const ExperimentConfig c = ParseConfig(kFullConfig);
  EXPECT_EQ(c.policy, PolicyKind::kStrictBoth);
  const auto& d = std::get<BetaSecondPrice>(c.distribution);
  EXPECT_EQ(d.a_v, 5.0);
  EXPECT_EQ(d.b_d, 5.0);
  EXPECT_EQ(c.horizons, (std::vector<int64_t>{100, 400}));
  EXPECT_EQ(c.trials, 3);
  EXPECT_EQ(c.rho, 0.25);
  EXPECT_EQ(c.seed, 18446744073709551615ULL);
  EXPECT_EQ(c.alpha_override, 0.05);
  EXPECT_FALSE(c.eta_override.has_value());
  EXPECT_EQ(c.bid_cap, 3.0);
  EXPECT_EQ(c.oracle, OracleMode::kNone);
  EXPECT_EQ(c.beta_samples, 500);
  EXPECT_EQ(c.output_dir, "results");
  EXPECT_TRUE(c.emit_trajectories);
}

TEST(ConfigTest, MinimalConfigUsesDefaults) {
  const ExperimentConfig c = ParseConfig(
      "policy: ApproxRoS\ndistribution: {kind: uniform_second_price}\n");
  EXPECT_EQ(c.policy, PolicyKind::kApproxRos);
  EXPECT_EQ(c.trials, 1);
  EXPECT_EQ(c.target_ros, 1.0);
  EXPECT_EQ(c.oracle, OracleMode::kAuto);
}

TEST(ConfigTest, ErrorsCarryLocations) {
  const std::string base =
      "policy: approx_ros\ndistribution: {kind: uniform_second_price}\n";
  EXPECT_EQ(ErrorOf(base + "trials: 0\n"), "exp.yaml:3:9: trials must be >= 1");
  EXPECT_EQ(ErrorOf(base + "trails: 3\n"),
            "exp.yaml:3:1: unknown key 'trails' in config");
  EXPECT_EQ(ErrorOf(base + "horizons: [10, 5]\n"),
            "exp.yaml:3:11: horizons must be positive and strictly ascending");
  EXPECT_EQ(ErrorOf(base + "trials: many\n"),
            "exp.yaml:3:9: trials must be an integer");
  EXPECT_NE(ErrorOf("policy: greedy\ndistribution: {kind: x}\n")
                .find("exp.yaml:1:9: unknown policy 'greedy'"),
            std::string::npos);
  EXPECT_NE(ErrorOf("policy: [\n").find("exp.yaml:"), std::string::npos);
}

TEST(ConfigTest, SemanticValidation) {
  const std::string e = ErrorOf(
      "policy: strict_both\ndistribution: {kind: uniform_second_price}\n");
  EXPECT_NE(e.find("rho required"), std::string::npos);
  EXPECT_NE(ErrorOf("policy: approx_ros\n"
                    "distribution: {kind: uniform_second_price}\n"
                    "target_ros: 0.5\n")
                .find("target_ros"),
            std::string::npos);
  EXPECT_NE(ErrorOf("policy: approx_ros\n"
                    "distribution: {kind: uniform_second_price, v_hi: 2}\n")
                .find("value range"),
            std::string::npos);
}

TEST(ConfigTest, SeedEnvironmentOverride) {
  ExperimentConfig c = ParseConfig(kFullConfig);
  ::setenv("ROSBID_SEED", "1234", 1);
  ApplyEnvironmentOverrides(c);
  EXPECT_EQ(c.seed, 1234u);
  ::setenv("ROSBID_SEED", "12x", 1);
  EXPECT_THROW(ApplyEnvironmentOverrides(c), ConfigError);
  ::unsetenv("ROSBID_SEED");
  ApplyEnvironmentOverrides(c);
  EXPECT_EQ(c.seed, 1234u);
}

TEST(ConfigTest, HashTracksResultAffectingFields) {
  ExperimentConfig a = ParseConfig(kFullConfig);
  ExperimentConfig b = a;
  b.output_dir = "elsewhere";
  EXPECT_EQ(ConfigHash(a), ConfigHash(b));
  b.seed = 7;
  EXPECT_NE(ConfigHash(a), ConfigHash(b));
  EXPECT_EQ(ConfigHash(a).size(), 16u);
}

TEST(ConfigTest, ShippedConfigsParse) {
  int parsed = 0;
  for (const auto& entry : std::filesystem::directory_iterator(
           std::filesystem::path(ROSBID_SOURCE_DIR) / "configs")) {
    EXPECT_NO_THROW(LoadConfig(entry.path().string())) << entry.path();
    ++parsed;
  }
  EXPECT_GE(parsed, 4);
}

TEST(OutputTest, FormatRealRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5}) {
    EXPECT_EQ(std::stod(FormatReal(x)), x);
  }
  EXPECT_EQ(FormatReal(0.25), "0.25");
}

TEST(OutputTest, FrozenHeaders) {
  EXPECT_STREQ(kTrialsCsvHeader,
               "trial,seed,T,policy,reward,opt_value,regret,ros_slack,"
               "total_spend,K,max_mu,stopping_time");
  EXPECT_STREQ(kTrajectoryCsvHeader,
               "t,v,bid,x,p,g,g_prime,lambda,mu,budget_remaining");
  EXPECT_STREQ(kSweepCsvHeader,
               "T,mean_regret,std_regret,mean_violation,max_violation,slope");
}

TEST(OutputTest, SummaryRecordsProvenance) {
  ExperimentConfig c = ParseConfig(kFullConfig);
  c.emit_trajectories = false;
  const ExperimentReport r = RunExperiment(c, 1);
  const auto j = nlohmann::json::parse(SummaryJson(r));
  EXPECT_TRUE(j.contains("version"));
  EXPECT_EQ(j["config_hash"], ConfigHash(c));
  EXPECT_EQ(j["master_seed"].get<uint64_t>(), c.seed);
  EXPECT_EQ(j["horizons"][0]["oracle_method"], "none");
  EXPECT_TRUE(j["slope"].is_null());
  const std::string csv = TrialsCsv(r.horizons[0], c.policy);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(CheckSuitesTest, DefaultSuitesPass) {
  for (const SuiteResult& r : RunChecks({})) {
    EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
  }
}

TEST(CheckSuitesTest, BrokenFixtureFailsTruthfulness) {
  CheckOptions o;
  o.suite = "truthfulness";
  o.inject_broken_custom = true;
  const auto results = RunChecks(o);
  ASSERT_EQ(results.size(), 1u);
  EXPECT_FALSE(results[0].passed);
  EXPECT_NE(results[0].detail.find("broken_custom"), std::string::npos);
}

TEST(CheckSuitesTest, SuiteFilter) {
  CheckOptions o;
  o.suite = "oracle";
  const auto results = RunChecks(o);
  ASSERT_EQ(results.size(), 1u);
  EXPECT_EQ(results[0].name, "oracle");
  o.suite = "nope";
  EXPECT_THROW(RunChecks(o), ConfigError);
}

}  // namespace
}  // namespace rosbid
