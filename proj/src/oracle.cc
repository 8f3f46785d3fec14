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

#include "rosbid/oracle.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "rosbid/errors.h"

namespace rosbid {
namespace {

// --- Exact enumeration -----------------------------------------------------

struct ExactSearch {
  const std::vector<double>& v;
  const std::vector<double>& d;
  std::optional<double> budget;
  std::vector<double> suffix_value;  // sum of v[i..]
  std::vector<bool> taken;
  std::vector<bool> best_set;
  double best = 0.0;

  void Run(size_t i, double sum_v, double sum_d) {
    if (budget && sum_d > *budget) return;  // spend only grows
    if (i == v.size()) {
      if (sum_d <= sum_v && sum_v > best) {
        best = sum_v;
        best_set = taken;
      }
      return;
    }
    // No completion can beat the incumbent. The slack keeps near-ties alive
    // so the result matches plain enumeration bit for bit.
    if (sum_v + suffix_value[i] < best - 1e-9) return;
    taken[i] = true;
    Run(i + 1, sum_v + v[i], sum_d + d[i]);
    taken[i] = false;
    Run(i + 1, sum_v, sum_d);
  }
};

// --- Fractional LP ---------------------------------------------------------

// max sum w x  s.t.  sum c x <= 0,  0 <= x <= 1.
// Items with w > 0, c <= 0 are free; w <= 0, c >= 0 are never worth taking;
// the rest buy slack (w > 0, c > 0) or sell it (w <= 0, c < 0) and are
// matched greedily by price.
struct KnapsackSolution {
  std::vector<double> x;
  double dual = 0.0;  // min over candidate slack prices of sum max(0, w - l c)
};

double SlackDual(std::span<const double> w, std::span<const double> c,
                 double price) {
  double total = 0.0;
  for (size_t t = 0; t < w.size(); ++t) {
    total += std::max(0.0, w[t] - price * c[t]);
  }
  return total;
}

KnapsackSolution SolveRosKnapsack(std::span<const double> w,
                                  std::span<const double> c) {
  const size_t n = w.size();
  KnapsackSolution sol;
  sol.x.assign(n, 0.0);
  double slack = 0.0;
  std::vector<size_t> buys;
  std::vector<size_t> sells;
  for (size_t t = 0; t < n; ++t) {
    if (w[t] > 0.0 && c[t] <= 0.0) {
      sol.x[t] = 1.0;
      slack += -c[t];
    } else if (w[t] > 0.0) {
      buys.push_back(t);
    } else if (c[t] < 0.0) {
      sells.push_back(t);
    }
  }
  auto ratio = [&](size_t t) { return w[t] / c[t]; };
  std::sort(buys.begin(), buys.end(), [&](size_t a, size_t b) {
    const double ra = ratio(a), rb = ratio(b);
    return ra != rb ? ra > rb : a < b;
  });
  std::sort(sells.begin(), sells.end(), [&](size_t a, size_t b) {
    const double qa = ratio(a), qb = ratio(b);
    return qa != qb ? qa < qb : a < b;
  });

  size_t i = 0;
  size_t j = 0;
  while (i < buys.size()) {
    const size_t b = buys[i];
    double need = c[b] * (1.0 - sol.x[b]);
    if (slack >= need) {
      sol.x[b] = 1.0;
      slack -= need;
      ++i;
      continue;
    }
    if (slack > 0.0) {
      sol.x[b] += slack / c[b];
      slack = 0.0;
      need = c[b] * (1.0 - sol.x[b]);
    }
    if (j < sells.size() && ratio(sells[j]) < ratio(b)) {
      const size_t s = sells[j];
      const double available = -c[s] * (1.0 - sol.x[s]);
      if (available <= need) {
        sol.x[s] = 1.0;
        slack += available;
        ++j;
      } else {
        sol.x[s] += need / -c[s];
        slack += need;
      }
      continue;
    }
    break;
  }

  // The optimal slack price is the ratio of the marginal buy or sell.
  std::vector<double> prices = {0.0};
  for (size_t k : {i, i - 1}) {
    if (k < buys.size()) prices.push_back(ratio(buys[k]));
  }
  for (size_t k : {j, j - 1}) {
    if (k < sells.size()) prices.push_back(ratio(sells[k]));
  }
  sol.dual = std::numeric_limits<double>::infinity();
  for (double p : prices) {
    sol.dual = std::min(sol.dual, SlackDual(w, c, std::max(0.0, p)));
  }
  return sol;
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t t = 0; t < a.size(); ++t) s += a[t] * b[t];
  return s;
}

// --- Lagrangian dual for general truthful auctions -------------------------

// Golden-section search of a convex function on [lo, hi]; returns the
// smallest value seen.
double MinimizeConvex(const std::function<double(double)>& f, double lo,
                      double hi, int iterations = 80) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  double best = std::min({f(lo), f(hi), f1, f2});
  for (int k = 0; k < iterations; ++k) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
      best = std::min(best, f1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
      best = std::min(best, f2);
    }
  }
  return best;
}

// Smallest power-of-two multiple of `start` past the minimum of a convex f
// on [floor, inf).
double BracketUpper(const std::function<double(double)>& f, double start) {
  double hi = start;
  double f_hi = f(hi);
  for (int k = 0; k < 60; ++k) {
    const double next = 2.0 * hi;
    const double f_next = f(next);
    if (f_next >= f_hi) return next;
    hi = next;
    f_hi = f_next;
  }
  return hi;
}

}  // namespace

std::optional<double> OfflineInstance::budget() const {
  if (!rho) return std::nullopt;
  return *rho * static_cast<double>(values.size());
}

OfflineInstance OfflineInstance::FromQueries(std::span<const Query> queries,
                                             std::optional<double> rho) {
  OfflineInstance inst;
  inst.rho = rho;
  inst.values.reserve(queries.size());
  inst.competing_bids.reserve(queries.size());
  for (const Query& q : queries) {
    const auto d = q.auction.competing_bid();
    if (!d) {
      throw UnsupportedAuction(
          "offline LP/enumeration oracles need second-price auctions");
    }
    inst.values.push_back(q.value);
    inst.competing_bids.push_back(*d);
  }
  return inst;
}

std::string_view OracleMethodName(OracleMethod method) {
  switch (method) {
    case OracleMethod::kExactEnumeration:
      return "exact_enumeration";
    case OracleMethod::kFractionalLp:
      return "fractional_lp";
    case OracleMethod::kLagrangianDual:
      return "lagrangian_dual";
  }
  return "unknown";
}

OracleResult OptExact(const OfflineInstance& instance) {
  const size_t n = instance.size();
  if (n > kMaxExactRounds) {
    throw TooLarge("exact oracle limited to " +
                   std::to_string(kMaxExactRounds) + " rounds, got " +
                   std::to_string(n));
  }
  ExactSearch search{instance.values, instance.competing_bids,
                     instance.budget(), {}, {}, {}, 0.0};
  search.suffix_value.assign(n + 1, 0.0);
  for (size_t i = n; i-- > 0;) {
    search.suffix_value[i] = search.suffix_value[i + 1] + instance.values[i];
  }
  search.taken.assign(n, false);
  search.best_set.assign(n, false);
  search.Run(0, 0.0, 0.0);

  OracleResult result;
  result.opt_value = search.best;
  result.method = OracleMethod::kExactEnumeration;
  result.is_upper_bound = false;
  std::vector<int> chosen;
  for (size_t i = 0; i < n; ++i) {
    if (search.best_set[i]) chosen.push_back(static_cast<int>(i));
  }
  result.chosen_set = std::move(chosen);
  return result;
}

OracleResult OptLpUpperBound(const OfflineInstance& instance) {
  OracleResult result;
  result.method = OracleMethod::kFractionalLp;
  result.is_upper_bound = true;
  const size_t n = instance.size();
  if (n == 0) return result;

  const std::vector<double>& v = instance.values;
  const std::vector<double>& d = instance.competing_bids;
  std::vector<double> cost(n);
  for (size_t t = 0; t < n; ++t) cost[t] = d[t] - v[t];

  std::vector<double> w(n);
  auto solve = [&](double mu) {
    for (size_t t = 0; t < n; ++t) w[t] = v[t] - mu * d[t];
    return SolveRosKnapsack(w, cost);
  };

  double primal = 0.0;
  double dual = 0.0;
  const std::optional<double> budget = instance.budget();
  KnapsackSolution free_sol = solve(0.0);
  if (!budget || Dot(d, free_sol.x) <= *budget) {
    primal = Dot(v, free_sol.x);
    dual = free_sol.dual;
  } else {
    double lo = 0.0;
    double hi = 1.0;
    while (Dot(d, solve(hi).x) > *budget) {
      hi *= 2.0;
      if (hi > 1e300) throw NumericalFailure("budget multiplier diverged");
    }
    for (int k = 0; k < 200; ++k) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
      if (Dot(d, solve(mid).x) > *budget) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const KnapsackSolution over = solve(lo);
    const KnapsackSolution under = solve(hi);
    const double u_over = Dot(d, over.x);
    const double u_under = Dot(d, under.x);
    const double theta = (*budget - u_under) / (u_over - u_under);
    primal = theta * Dot(v, over.x) + (1.0 - theta) * Dot(v, under.x);
    dual = std::min(over.dual + lo * *budget, under.dual + hi * *budget);
  }

  result.opt_value = dual;
  result.gap = dual - primal;
  if (std::abs(result.gap) > kLpGapTolerance * std::max(1.0, dual)) {
    throw NumericalFailure("LP duality gap " + std::to_string(result.gap) +
                           " exceeds tolerance");
  }
  return result;
}

OracleResult OptLagrangianUpperBound(std::span<const Query> queries,
                                     std::optional<double> rho) {
  OracleResult result;
  result.method = OracleMethod::kLagrangianDual;
  result.is_upper_bound = true;
  if (queries.empty()) return result;

  constexpr double kMinLambda = 1e-6;
  const double budget =
      rho ? *rho * static_cast<double>(queries.size()) : 0.0;

  auto dual_at = [&](double lambda, double mu) {
    double total = mu * budget;
    for (const Query& q : queries) {
      const double bid = (1.0 + lambda) * q.value / (lambda + mu);
      const double x = q.auction.Allocation(bid);
      const double p = x == 0.0 ? 0.0 : q.auction.Payment(bid);
      total += q.value * x + lambda * (q.value * x - p) - mu * p;
    }
    return total;
  };
  auto best_over_lambda = [&](double mu) {
    auto f = [&](double lambda) { return dual_at(lambda, mu); };
    return MinimizeConvex(f, kMinLambda, BracketUpper(f, 1.0));
  };

  if (!rho) {
    result.opt_value = best_over_lambda(0.0);
  } else {
    result.opt_value =
        MinimizeConvex(best_over_lambda, 0.0,
                       BracketUpper(best_over_lambda, 1.0), 50);
  }
  return result;
}

OracleResult OptAuto(std::span<const Query> queries,
                     std::optional<double> rho) {
  const bool all_second_price =
      std::all_of(queries.begin(), queries.end(),
                  [](const Query& q) { return q.auction.is_second_price(); });
  if (!all_second_price) return OptLagrangianUpperBound(queries, rho);
  const OfflineInstance instance = OfflineInstance::FromQueries(queries, rho);
  if (instance.size() <= kMaxExactRounds) return OptExact(instance);
  return OptLpUpperBound(instance);
}

}  // namespace rosbid
