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

#include "rosbid/check.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "rosbid/errors.h"
#include "rosbid/mirror_descent.h"

namespace rosbid {
namespace {

using Engine = std::mt19937_64;

double Uniform(Engine& rng, double lo, double hi) {
  return boost::random::uniform_real_distribution<double>(lo, hi)(rng);
}

std::string Describe(double residual, double tolerance) {
  std::ostringstream out;
  out << "worst residual " << residual << " (tolerance " << tolerance << ")";
  return out.str();
}

}  // namespace

std::vector<std::pair<std::string, AuctionModel>> BuiltinAuctionModels() {
  std::vector<std::pair<std::string, AuctionModel>> models;
  for (double d : {0.0, 0.25, 0.5, 1.0}) {
    std::ostringstream name;
    name << "second_price(d=" << d << ")";
    models.emplace_back(name.str(), AuctionModel::MakeSecondPrice(d));
  }
  models.emplace_back("linear", AuctionModel::MakeLinear());
  // Smooth convex ramp saturating at 1.
  models.emplace_back(
      "custom_quadratic",
      AuctionModel::MakeCustom(CustomAllocation(
          [](double b) { return b >= 1.0 ? 1.0 : b * b; }, {1.0})));
  // Step-plus-ramp curve with a jump at 0.3.
  models.emplace_back(
      "custom_step_ramp",
      AuctionModel::MakeCustom(CustomAllocation(
          [](double b) {
            if (b < 0.3) return 0.0;
            return std::min(1.0, 0.4 + 0.5 * (b - 0.3));
          },
          {0.3, 1.5})));
  return models;
}

AuctionModel BrokenCustomAuction() {
  auto alloc = [](double b) { return std::min(1.0, b); };
  return AuctionModel::MakeCustom(CustomAllocation(
      alloc, {1.0}, [alloc](double b) { return b * alloc(b); }));
}

double BruteForceOpt(std::span<const double> values,
                     std::span<const double> competing_bids,
                     std::optional<double> budget) {
  const size_t n = values.size();
  double best = 0.0;
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    double v = 0.0, d = 0.0;
    for (size_t i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        v += values[i];
        d += competing_bids[i];
      }
    }
    if (d <= v && (!budget || d <= *budget)) best = std::max(best, v);
  }
  return best;
}

SuiteResult CheckTruthfulnessSuite(bool inject_broken_custom) {
  SuiteResult result{"truthfulness", true, 0.0, kTruthfulnessTolerance, ""};
  auto models = BuiltinAuctionModels();
  if (inject_broken_custom) {
    models.emplace_back("broken_custom", BrokenCustomAuction());
  }
  std::ostringstream detail;
  for (const auto& [name, model] : models) {
    const TruthfulnessReport r = CheckTruthful(model, kTruthfulnessGrid);
    const double worst =
        std::max(r.max_monotonicity_violation, r.max_myerson_residual);
    result.residual = std::max(result.residual, worst);
    if (!r.passed()) {
      result.passed = false;
      detail << name << " failed (residual " << worst << "); ";
    }
  }
  detail << Describe(result.residual, result.tolerance) << " over "
         << models.size() << " models";
  result.detail = detail.str();
  return result;
}

SuiteResult CheckBregmanSuite(int pairs, uint64_t seed) {
  // V(y, x) >= (y - x)^2 / (2 max(x, y)); the residual is the largest
  // shortfall, relative to the right-hand side.
  SuiteResult result{"bregman", true, 0.0, 1e-12, ""};
  Engine rng(seed);
  for (int i = 0; i < pairs; ++i) {
    const double x = Uniform(rng, 0.0, 10.0);
    const double y = Uniform(rng, 0.0, 10.0);
    if (x == 0.0) continue;  // open at 0; the draw is [0, 10)
    const double lhs = Bregman(MirrorMap::kGeneralizedNegEntropy, y, x);
    const double rhs = (y - x) * (y - x) / (2.0 * std::max(x, y));
    const double shortfall = rhs > 0.0 ? (rhs - lhs) / rhs : 0.0;
    result.residual = std::max(result.residual, shortfall);
  }
  result.passed = result.residual <= result.tolerance;
  result.detail = Describe(result.residual, result.tolerance) + " over " +
                  std::to_string(pairs) + " pairs";
  return result;
}

SuiteResult CheckLambdaSuite(int sequences, int steps, uint64_t seed) {
  // Iterated multiplicative updates must equal exp(-alpha sum g).
  SuiteResult result{"lambda", true, 0.0, kLambdaConsistencyTolerance, ""};
  Engine rng(seed);
  const double alpha = 1.0 / std::sqrt(static_cast<double>(steps));
  for (int s = 0; s < sequences; ++s) {
    // Drifting gradients so lambda wanders over many orders of magnitude.
    const double drift = Uniform(rng, -0.5, 0.5);
    DualState state = DualState::Initial(alpha, 0.0);
    double sum = 0.0, comp = 0.0;  // reference Neumaier sum of g
    for (int t = 0; t < steps; ++t) {
      const double g =
          std::clamp(drift + Uniform(rng, -0.5, 0.5), -1.0, 1.0);
      state = UpdateRosDual(state, g);
      const double next = sum + g;
      comp += std::abs(sum) >= std::abs(g) ? (sum - next) + g
                                           : (g - next) + sum;
      sum = next;
      const double closed = std::exp(-alpha * (sum + comp));
      const double rel = std::abs(state.lambda / closed - 1.0);
      result.residual = std::max(result.residual, rel);
    }
  }
  result.passed = result.residual <= result.tolerance;
  result.detail = Describe(result.residual, result.tolerance) + " over " +
                  std::to_string(sequences) + "x" + std::to_string(steps) +
                  " steps";
  return result;
}

SuiteResult CheckOracleSuite(int instances, int max_rounds, uint64_t seed) {
  // Residual: largest amount by which the LP falls below exact enumeration.
  SuiteResult result{"oracle", true, 0.0, 1e-9, ""};
  Engine rng(seed);
  int mismatches = 0;
  for (int k = 0; k < instances; ++k) {
    const int n =
        boost::random::uniform_int_distribution<int>(1, max_rounds)(rng);
    OfflineInstance inst;
    for (int i = 0; i < n; ++i) {
      inst.values.push_back(Uniform(rng, 0.0, 1.0));
      inst.competing_bids.push_back(Uniform(rng, 0.0, 1.0));
    }
    if (k % 2 == 1) inst.rho = Uniform(rng, 0.02, 0.6);
    const double exact = OptExact(inst).opt_value;
    const double brute =
        BruteForceOpt(inst.values, inst.competing_bids, inst.budget());
    if (exact != brute) ++mismatches;
    const double lp = OptLpUpperBound(inst).opt_value;
    result.residual = std::max(result.residual, exact - lp);
  }
  result.passed = mismatches == 0 && result.residual <= result.tolerance;
  result.detail = std::to_string(mismatches) +
                  " exact/enumeration mismatches; LP shortfall " +
                  Describe(result.residual, result.tolerance) + " over " +
                  std::to_string(instances) + " instances";
  return result;
}

const std::vector<std::string>& SuiteNames() {
  static const std::vector<std::string> names = {"truthfulness", "bregman",
                                                 "lambda", "oracle"};
  return names;
}

std::vector<SuiteResult> RunChecks(const CheckOptions& options) {
  if (options.suite &&
      std::find(SuiteNames().begin(), SuiteNames().end(), *options.suite) ==
          SuiteNames().end()) {
    throw ConfigError("unknown suite '" + *options.suite + "'");
  }
  std::vector<SuiteResult> results;
  auto wanted = [&](const char* name) {
    return !options.suite || *options.suite == name;
  };
  if (wanted("truthfulness")) {
    results.push_back(CheckTruthfulnessSuite(options.inject_broken_custom));
  }
  if (wanted("bregman")) results.push_back(CheckBregmanSuite());
  if (wanted("lambda")) results.push_back(CheckLambdaSuite());
  if (wanted("oracle")) results.push_back(CheckOracleSuite());
  return results;
}

}  // namespace rosbid
