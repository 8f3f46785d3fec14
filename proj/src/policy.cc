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

#include "rosbid/policy.h"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "internal/dcheck.h"
#include "rosbid/errors.h"

namespace rosbid {
namespace {

struct KindName {
  PolicyKind kind;
  std::string_view snake;
  std::string_view camel;
};

constexpr std::array<KindName, 6> kKindNames = {{
    {PolicyKind::kApproxRos, "approx_ros", "ApproxRoS"},
    {PolicyKind::kStrictRos, "strict_ros", "StrictRoS"},
    {PolicyKind::kApproxRosStrictBudget, "approx_ros_strict_budget",
     "ApproxRoSStrictBudget"},
    {PolicyKind::kStrictBoth, "strict_both", "StrictBoth"},
    {PolicyKind::kSquaredApproxRos, "squared_approx_ros", "SquaredApproxRoS"},
    {PolicyKind::kTruthfulBaseline, "truthful", "TruthfulBaseline"},
}};

constexpr double kBoundSlack = 1e-12;

double DefaultAlpha(const PolicyOptions& options, int64_t horizon) {
  if (options.alpha_override) return *options.alpha_override;
  return 1.0 / std::sqrt(static_cast<double>(horizon));
}

double DefaultEta(const PolicyOptions& options, int64_t horizon, double rho) {
  if (options.eta_override) return *options.eta_override;
  return 1.0 / ((1.0 + rho * rho) * std::sqrt(static_cast<double>(horizon)));
}

StepOutcome Play(const PolicyState& state, const Query& query, double bid) {
  StepOutcome out;
  out.t = state.t + 1;
  out.value = query.value;
  out.bid = bid;
  out.allocation = query.auction.Allocation(bid);
  out.price = out.allocation == 0.0 ? 0.0 : query.auction.Payment(bid);
  out.g = out.value * out.allocation - out.price;
  out.lambda = state.duals.lambda;
  out.mu = state.duals.mu;
  return out;
}

// Gradient bounds for any bid no larger than (1 + lambda) / lambda * v:
// max(-1, -1/lambda) <= g <= v x.
void CheckGradientBounds(const StepOutcome& out) {
  ROSBID_DCHECK(out.g <= out.value * out.allocation + kBoundSlack,
                "g exceeds realized value");
  if (out.lambda > 0.0) {
    ROSBID_DCHECK(out.g >= -1.0 / out.lambda - kBoundSlack,
                  "g below -1/lambda");
  }
  if (out.price <= 1.0) {
    ROSBID_DCHECK(out.g >= -1.0 - kBoundSlack, "g below -1");
  }
  (void)out;
}

// Multiplicative-dual round shared by kApproxRos and the strict policies'
// main loop.
StepOutcome ApproxRosRound(PolicyState& state, const Query& query) {
  StepOutcome out =
      Play(state, query, BidApproxRos(state.duals.lambda, query.value));
  CheckGradientBounds(out);
  state.duals = UpdateRosDual(state.duals, out.g);
  return out;
}

// Two-dual round with the budget gate.
StepOutcome BudgetedRound(PolicyState& state, const Query& query) {
  const double bid = BidCombined(state.duals.lambda, state.duals.mu,
                                 query.value, state.budget_remaining());
  StepOutcome out = Play(state, query, bid);
  CheckGradientBounds(out);
  ROSBID_DCHECK(state.duals.mu <= 2.0 / state.rho + 1.0 + kBoundSlack,
                "mu above 2/rho + 1");
  out.g_prime = state.rho - out.price;
  state.duals = UpdateRosDual(state.duals, out.g);
  state.duals = UpdateBudgetDual(state.duals, out.g_prime);
  state.spent += out.price;
  return out;
}

StepOutcome TruthfulRound(PolicyState& state, const Query& query) {
  StepOutcome out = Play(state, query, query.value);
  CheckGradientBounds(out);
  return out;
}

void StartMainLoop(PolicyState& state) {
  state.phase = Phase::kMainLoop;
  state.first_phase_length = state.t;
  state.main_start = state.t;
  state.main_horizon = state.horizon - state.t;
  if (state.main_horizon == 0) return;
  const double alpha = DefaultAlpha(state.options, state.main_horizon);
  if (state.kind == PolicyKind::kStrictBoth) {
    state.rho = state.budget_remaining() /
                static_cast<double>(state.main_horizon);
    state.duals = DualState::Initial(
        alpha, DefaultEta(state.options, state.main_horizon, state.rho));
  } else {
    state.duals = DualState::Initial(alpha, state.duals.eta);
  }
}

// Phase-1 exit rule of kStrictBoth, evaluated with the 1-based index of the
// upcoming round.
bool ShouldExit(const PolicyState& state) {
  return static_cast<double>(state.t + 1) >=
         state.options.rho.value_or(0.0) * static_cast<double>(state.horizon);
}

}  // namespace

std::string_view PolicyName(PolicyKind kind) {
  for (const auto& k : kKindNames) {
    if (k.kind == kind) return k.snake;
  }
  return "unknown";
}

std::optional<PolicyKind> ParsePolicyKind(std::string_view name) {
  for (const auto& k : kKindNames) {
    if (name == k.snake || name == k.camel) return k.kind;
  }
  return std::nullopt;
}

bool IsBudgeted(PolicyKind kind) {
  return kind == PolicyKind::kApproxRosStrictBudget ||
         kind == PolicyKind::kStrictBoth;
}

std::string_view PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kBufferBuilding:
      return "buffer_building";
    case Phase::kMainLoop:
      return "main_loop";
    case Phase::kExited:
      return "exited";
  }
  return "unknown";
}

double RosViolationAllowance(int64_t horizon) {
  const double t = static_cast<double>(horizon);
  return 2.0 * std::sqrt(t) * std::log(t);
}

double BidApproxRos(double lambda, double value) {
  return value + value / lambda;
}

double BidCombined(double lambda, double mu, double value,
                   double budget_remaining) {
  if (!(budget_remaining >= 1.0)) return 0.0;
  return (1.0 + lambda) / (mu + lambda) * value;
}

PolicyState InitialPolicyState(PolicyKind kind, int64_t horizon,
                               const PolicyOptions& options) {
  if (horizon < 1) {
    throw ConfigError("horizon must be >= 1, got " + std::to_string(horizon));
  }
  if (IsBudgeted(kind) && !options.rho) {
    throw ConfigError(std::string("rho required for policy ") +
                      std::string(PolicyName(kind)));
  }
  if (options.rho && !(*options.rho > 0.0)) {
    throw ConfigError("rho must be > 0");
  }
  if (options.alpha_override && !(*options.alpha_override > 0.0)) {
    throw ConfigError("alpha_override must be > 0");
  }
  if (options.eta_override && !(*options.eta_override > 0.0)) {
    throw ConfigError("eta_override must be > 0");
  }
  if (!(options.bid_cap > 0.0)) throw ConfigError("bid_cap must be > 0");

  PolicyState state;
  state.kind = kind;
  state.options = options;
  state.horizon = horizon;
  state.main_horizon = horizon;
  state.initial_budget = std::numeric_limits<double>::infinity();
  state.rho = options.rho.value_or(0.0);

  const double t = static_cast<double>(horizon);
  double alpha = DefaultAlpha(options, horizon);
  double eta = 1.0;
  switch (kind) {
    case PolicyKind::kSquaredApproxRos:
      if (!options.alpha_override) alpha = std::pow(t, -1.0 / 3.0);
      break;
    case PolicyKind::kApproxRosStrictBudget:
    case PolicyKind::kStrictBoth:
      state.initial_budget = state.rho * t;
      eta = DefaultEta(options, horizon, state.rho);
      break;
    default:
      break;
  }
  state.duals = DualState::Initial(alpha, eta);

  if (kind == PolicyKind::kStrictRos || kind == PolicyKind::kStrictBoth) {
    state.v_ros_threshold = RosViolationAllowance(horizon);
    state.phase = Phase::kBufferBuilding;
    if (kind == PolicyKind::kStrictRos && options.intermingled) {
      state.phase = Phase::kMainLoop;
      state.first_phase_length = 0;
    }
    if (kind == PolicyKind::kStrictBoth && ShouldExit(state)) {
      state.phase = Phase::kExited;
      state.first_phase_length = 0;
    }
  }
  return state;
}

std::pair<StepOutcome, PolicyState> PolicyStep(PolicyState state,
                                               const Query& query) {
  if (state.phase == Phase::kExited) {
    throw StateExhausted("policy has exited after round " +
                         std::to_string(state.t));
  }
  if (state.t >= state.horizon) {
    throw StateExhausted("horizon " + std::to_string(state.horizon) +
                         " already reached");
  }

  StepOutcome out;
  switch (state.kind) {
    case PolicyKind::kApproxRos:
      out = ApproxRosRound(state, query);
      break;

    case PolicyKind::kSquaredApproxRos: {
      const double lambda = state.duals.lambda;
      const double bid = lambda > 0.0 ? query.value / lambda + query.value
                                      : state.options.bid_cap;
      out = Play(state, query, bid);
      CheckGradientBounds(out);
      state.duals = UpdateRosDualSquared(state.duals, out.g);
      break;
    }

    case PolicyKind::kApproxRosStrictBudget:
      out = BudgetedRound(state, query);
      break;

    case PolicyKind::kTruthfulBaseline:
      out = TruthfulRound(state, query);
      break;

    case PolicyKind::kStrictRos:
      if (state.options.intermingled) {
        // Hold (bid truthfully, duals frozen) whenever the running slack
        // could not absorb a worst-case round, until it reaches the resume
        // level.
        const double resume = std::max(
            1.0, std::sqrt(static_cast<double>(state.horizon)));
        if (!state.holding && state.ros_total < 1.0) state.holding = true;
        if (state.holding) {
          out = TruthfulRound(state, query);
          state.buffer += out.g;
          *state.first_phase_length += 1;
          if (state.ros_total + out.g >= resume) state.holding = false;
        } else {
          out = ApproxRosRound(state, query);
        }
      } else if (state.phase == Phase::kBufferBuilding) {
        out = TruthfulRound(state, query);
        state.buffer += out.g;
      } else {
        out = ApproxRosRound(state, query);
      }
      break;

    case PolicyKind::kStrictBoth:
      if (state.phase == Phase::kBufferBuilding) {
        out = TruthfulRound(state, query);
        out.g_prime = state.rho - out.price;
        state.buffer += out.g;
        state.spent += out.price;
      } else {
        out = BudgetedRound(state, query);
      }
      break;
  }

  state.t += 1;
  state.ros_total += out.g;
  out.budget_remaining = state.budget_remaining();

  if (state.phase == Phase::kBufferBuilding) {
    if (state.kind == PolicyKind::kStrictBoth && ShouldExit(state)) {
      state.phase = Phase::kExited;
      state.first_phase_length = state.t;
    } else if (state.buffer > state.v_ros_threshold) {
      StartMainLoop(state);
    } else if (state.t == state.horizon) {
      state.first_phase_length = state.t;
    }
  }
  return {out, state};
}

}  // namespace rosbid
