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
#include <string>
#include <variant>
#include <vector>

#include "rosbid/auction.h"

namespace rosbid {

// v ~ U[v_lo, v_hi], d ~ U[d_lo, d_hi], independent.
struct UniformSecondPrice {
  double v_lo = 0.0, v_hi = 1.0, d_lo = 0.0, d_hi = 1.0;
};

// v ~ Beta(a_v, b_v), d ~ Beta(a_d, b_d), independent.
struct BetaSecondPrice {
  double a_v = 1.0, b_v = 1.0, a_d = 1.0, b_d = 1.0;
};

// v ~ U[v_lo, v_hi], d = clamp(v - margin + U[-noise, noise], 0, 1).
struct CorrelatedSecondPrice {
  double v_lo = 0.0, v_hi = 1.0, margin = 0.0, noise = 0.0;
};

// v ~ U[v_lo, v_hi], allocation min(1, b).
struct LinearAllocationUniform {
  double v_lo = 0.0, v_hi = 1.0;
};

using Distribution = std::variant<UniformSecondPrice, BetaSecondPrice,
                                  CorrelatedSecondPrice,
                                  LinearAllocationUniform>;

std::string DistributionName(const Distribution& dist);

// Throws ConfigError if a parameter is out of range.
void ValidateDistribution(const Distribution& dist);

// Largest value the distribution can produce.
double ValueSupportMax(const Distribution& dist);

// `horizon` i.i.d. queries, bit-exact for a given (dist, horizon, seed).
// Throws ConfigError for bad parameters or horizon < 1.
std::vector<Query> GenerateStream(const Distribution& dist, int64_t horizon,
                                  uint64_t seed);

// Monte Carlo mean of max(0, v x(v) - p(v)): the expected per-round slack
// of truthful bidding, with values divided by `target_ros`.
double EstimateBeta(const Distribution& dist, int64_t samples, uint64_t seed,
                    double target_ros = 1.0);

}  // namespace rosbid
