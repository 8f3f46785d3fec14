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
#include <span>
#include <string>
#include <vector>

#include "rosbid/auction.h"
#include "rosbid/oracle.h"

namespace rosbid {

struct SuiteResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;  // worst observed deviation (suite-specific)
  double tolerance = 0.0;
  std::string detail;
};

// Grid density of the truthfulness suite.
inline constexpr int kTruthfulnessGrid = 2001;
// Closed-form vs. iterated lambda, relative.
inline constexpr double kLambdaConsistencyTolerance = 1e-12;

// Auction models the truthfulness suite covers.
std::vector<std::pair<std::string, AuctionModel>> BuiltinAuctionModels();

// A custom auction whose explicit payment is first-price (b x(b)); not
// truthful, so the truthfulness suite must reject it.
AuctionModel BrokenCustomAuction();

// Best feasible subset value by plain enumeration of all 2^T bitmasks, sums
// taken in index order. Independent of OptExact's search.
double BruteForceOpt(std::span<const double> values,
                     std::span<const double> competing_bids,
                     std::optional<double> budget);

SuiteResult CheckTruthfulnessSuite(bool inject_broken_custom = false);
SuiteResult CheckBregmanSuite(int pairs = 10000, uint64_t seed = 1);
SuiteResult CheckLambdaSuite(int sequences = 20, int steps = 10000,
                             uint64_t seed = 2);
SuiteResult CheckOracleSuite(int instances = 500, int max_rounds = 15,
                             uint64_t seed = 3);

const std::vector<std::string>& SuiteNames();

struct CheckOptions {
  std::optional<std::string> suite;  // run only this one
  bool inject_broken_custom = false;
};

// Throws ConfigError for an unknown suite name.
std::vector<SuiteResult> RunChecks(const CheckOptions& options);

}  // namespace rosbid
