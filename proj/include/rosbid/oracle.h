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

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rosbid/auction.h"

namespace rosbid {

// A realized stream of second-price queries reduced to (value, competing
// bid) pairs. Without `rho` only the RoS constraint applies; with it the
// spend is also capped at rho * T.
struct OfflineInstance {
  std::vector<double> values;
  std::vector<double> competing_bids;
  std::optional<double> rho;

  size_t size() const { return values.size(); }
  std::optional<double> budget() const;

  // Throws UnsupportedAuction if any query is not a second-price auction.
  static OfflineInstance FromQueries(std::span<const Query> queries,
                                     std::optional<double> rho);
};

enum class OracleMethod {
  kExactEnumeration,
  kFractionalLp,
  // min over (lambda, mu) >= 0 of the Lagrangian dual; used for auctions
  // whose bid space does not collapse to win/lose.
  kLagrangianDual,
};

std::string_view OracleMethodName(OracleMethod method);

struct OracleResult {
  double opt_value = 0.0;
  OracleMethod method = OracleMethod::kExactEnumeration;
  bool is_upper_bound = false;
  std::optional<std::vector<int>> chosen_set;  // 0-based round indices
  // Certified duality gap of the LP solve (0 for enumeration).
  double gap = 0.0;
};

inline constexpr size_t kMaxExactRounds = 25;
inline constexpr double kLpGapTolerance = 1e-7;

// Best subset S maximizing sum_{S} v subject to sum_{S} d <= sum_{S} v and,
// when budgeted, sum_{S} d <= rho T. Sums are accumulated in round order.
// Throws TooLarge above kMaxExactRounds rounds.
OracleResult OptExact(const OfflineInstance& instance);

// Fractional relaxation x_t in [0, 1] of the same problem, solved exactly
// by a slack-pricing greedy nested in a bisection on the budget multiplier.
// Reports the dual objective of the final multipliers, so the value is an
// upper bound on the relaxation regardless of rounding. Throws
// NumericalFailure when the primal/dual gap exceeds kLpGapTolerance
// (relative to max(1, value)).
OracleResult OptLpUpperBound(const OfflineInstance& instance);

// Weak-duality bound valid for any truthful auction mix:
// min_{lambda, mu >= 0} sum_t max_b [v x(b) + lambda g(b) - mu p(b)] + mu B.
OracleResult OptLagrangianUpperBound(std::span<const Query> queries,
                                     std::optional<double> rho);

// Exact enumeration for small second-price streams, the LP bound for larger
// ones, the Lagrangian bound for everything else.
OracleResult OptAuto(std::span<const Query> queries,
                     std::optional<double> rho);

}  // namespace rosbid
