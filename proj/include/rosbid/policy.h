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
#include <string_view>
#include <utility>

#include "rosbid/auction.h"
#include "rosbid/mirror_descent.h"

namespace rosbid {

enum class PolicyKind {
  kApproxRos,              // multiplicative dual, approximate RoS
  kStrictRos,              // truthful buffer phase, then kApproxRos
  kApproxRosStrictBudget,  // two duals, hard budget gate
  kStrictBoth,             // truthful buffer phase, then kApproxRosStrictBudget
  kSquaredApproxRos,       // additive (half-squared) dual, approximate RoS
  kTruthfulBaseline,       // bid = value
};

std::string_view PolicyName(PolicyKind kind);
std::optional<PolicyKind> ParsePolicyKind(std::string_view name);
bool IsBudgeted(PolicyKind kind);

enum class Phase { kBufferBuilding, kMainLoop, kExited };

std::string_view PhaseName(Phase phase);

struct PolicyOptions {
  std::optional<double> rho;  // per-round budget rate; required if budgeted
  std::optional<double> alpha_override;
  std::optional<double> eta_override;
  // Bid used by kSquaredApproxRos once its dual has been projected to 0.
  double bid_cap = 2.0;
  // kStrictRos only: interleave short truthful stretches with the main
  // loop instead of one up-front buffer phase.
  bool intermingled = false;
};

// One round of play. `lambda` and `mu` are the duals that produced the bid;
// `budget_remaining` is measured after this round's payment.
struct StepOutcome {
  int64_t t = 0;  // 1-based round index
  double value = 0.0;
  double bid = 0.0;
  double allocation = 0.0;
  double price = 0.0;
  double g = 0.0;        // value * allocation - price
  double g_prime = 0.0;  // rho - price (budgeted policies, else 0)
  double lambda = 0.0;
  double mu = 0.0;
  double budget_remaining = 0.0;
};

struct PolicyState {
  PolicyKind kind = PolicyKind::kApproxRos;
  PolicyOptions options;
  DualState duals;
  int64_t horizon = 0;  // T
  int64_t t = 0;        // rounds played so far
  double initial_budget = 0.0;  // rho T; +inf when unbudgeted
  double spent = 0.0;           // sum of payments, in play order
  double buffer = 0.0;          // sum of g over the buffer phase
  double ros_total = 0.0;       // sum of g over all rounds
  Phase phase = Phase::kMainLoop;
  double v_ros_threshold = 0.0;
  double rho = 0.0;  // active budget rate (rescaled in kStrictBoth phase 2)
  std::optional<int64_t> first_phase_length;
  // Horizon and start round of the currently running inner algorithm.
  int64_t main_horizon = 0;
  int64_t main_start = 0;
  bool holding = false;  // intermingled truthful stretch in progress

  double budget_remaining() const { return initial_budget - spent; }
};

// Buffer the strict policies accumulate before their main loop:
// 2 sqrt(T) ln T.
double RosViolationAllowance(int64_t horizon);

// (1 + lambda) / lambda * value. Requires lambda > 0.
double BidApproxRos(double lambda, double value);

// (1 + lambda) / (mu + lambda) * value while budget_remaining >= 1, else 0.
double BidCombined(double lambda, double mu, double value,
                   double budget_remaining);

// Throws ConfigError for horizon < 1, a missing or non-positive rho on a
// budgeted policy, or non-positive overrides.
PolicyState InitialPolicyState(PolicyKind kind, int64_t horizon,
                               const PolicyOptions& options = {});

// Plays one round. Throws StateExhausted after the horizon or once exited.
std::pair<StepOutcome, PolicyState> PolicyStep(PolicyState state,
                                               const Query& query);

}  // namespace rosbid
