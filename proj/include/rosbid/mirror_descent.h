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

namespace rosbid {

// Distance-generating functions on the non-negative half-line.
enum class MirrorMap {
  kGeneralizedNegEntropy,  // h(u) = u log u - u
  kHalfSquared,            // h(u) = u^2 / 2
};

// V_h(y, x) = h(y) - h(x) - h'(x)(y - x). Requires x > 0 and y >= 0 (the
// entropy map uses the limit y log y -> 0 at y = 0); throws DomainError
// otherwise.
double Bregman(MirrorMap map, double y, double x);

// Exponent clamp for the multiplicative RoS dual: lambda stays within
// [1e-300, 1e300].
inline constexpr double kMaxLogLambda = 690.77552789821368;  // ln(1e300)

// Dual iterates shared by every policy.
struct DualState {
  double lambda = 1.0;  // RoS dual
  double mu = 0.0;      // budget dual
  double alpha = 1.0;   // RoS step size
  double eta = 1.0;     // budget step size
  // ln(lambda) kept as a compensated running sum of -alpha * g, so the
  // closed form lambda_1 exp(-alpha sum g) holds without compounding.
  double log_lambda = 0.0;
  double log_lambda_compensation = 0.0;

  // lambda = lambda_1, mu = 0.
  static DualState Initial(double alpha, double eta, double lambda1 = 1.0);
};

// lambda <- lambda exp(-alpha g), via the log accumulator.
DualState UpdateRosDual(DualState state, double g);
// lambda <- max(0, lambda - alpha g).
DualState UpdateRosDualSquared(DualState state, double g);
// mu <- max(0, mu - eta g').
DualState UpdateBudgetDual(DualState state, double g_prime);

}  // namespace rosbid
