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

#include "rosbid/mirror_descent.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "rosbid/errors.h"

namespace rosbid {
namespace {

// (1 + u) log(1 + u) - u, accurate near u = 0 where the direct form cancels.
double EntropyGap(double u) {
  if (std::abs(u) < 1e-3) {
    const double u2 = u * u;
    return u2 * (0.5 - u / 6.0 + u2 / 12.0 - u2 * u / 20.0 + u2 * u2 / 30.0);
  }
  return (1.0 + u) * std::log1p(u) - u;
}

}  // namespace

double Bregman(MirrorMap map, double y, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("Bregman divergence needs x > 0, got " +
                      std::to_string(x));
  }
  if (!(y >= 0.0) || !std::isfinite(y)) {
    throw DomainError("Bregman divergence needs y >= 0, got " +
                      std::to_string(y));
  }
  switch (map) {
    case MirrorMap::kGeneralizedNegEntropy:
      if (y == 0.0) return x;
      // V = x [ r log r - r + 1 ] with r = y / x.
      return std::max(0.0, x * EntropyGap(y / x - 1.0));
    case MirrorMap::kHalfSquared:
      return 0.5 * (y - x) * (y - x);
  }
  return 0.0;
}

DualState DualState::Initial(double alpha, double eta, double lambda1) {
  DualState s;
  s.alpha = alpha;
  s.eta = eta;
  s.lambda = lambda1;
  s.log_lambda = std::log(lambda1);
  return s;
}

DualState UpdateRosDual(DualState state, double g) {
  // Neumaier summation of -alpha g into log_lambda.
  const double term = -state.alpha * g;
  const double sum = state.log_lambda + term;
  if (std::abs(state.log_lambda) >= std::abs(term)) {
    state.log_lambda_compensation += (state.log_lambda - sum) + term;
  } else {
    state.log_lambda_compensation += (term - sum) + state.log_lambda;
  }
  state.log_lambda = sum;
  const double exponent =
      std::clamp(state.log_lambda + state.log_lambda_compensation,
                 -kMaxLogLambda, kMaxLogLambda);
  state.lambda = std::exp(exponent);
  return state;
}

DualState UpdateRosDualSquared(DualState state, double g) {
  state.lambda = std::max(0.0, state.lambda - state.alpha * g);
  state.log_lambda = std::log(state.lambda);  // -inf once projected to 0
  state.log_lambda_compensation = 0.0;
  return state;
}

DualState UpdateBudgetDual(DualState state, double g_prime) {
  state.mu = std::max(0.0, state.mu - state.eta * g_prime);
  return state;
}

}  // namespace rosbid
