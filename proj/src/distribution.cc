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

#include "rosbid/distribution.h"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/random/beta_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "rosbid/errors.h"

namespace rosbid {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

using Engine = std::mt19937_64;

double DrawUniform(Engine& rng, double lo, double hi) {
  if (lo == hi) return lo;
  return boost::random::uniform_real_distribution<double>(lo, hi)(rng);
}

double DrawBeta(Engine& rng, double a, double b) {
  return boost::random::beta_distribution<double>(a, b)(rng);
}

void RequireUnitRange(double lo, double hi, const char* what) {
  if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) {
    throw ConfigError(std::string(what) +
                      " range must satisfy 0 <= lo <= hi <= 1");
  }
}

void RequirePositive(double x, const char* what) {
  if (!(x > 0.0 && std::isfinite(x))) {
    throw ConfigError(std::string(what) + " must be positive");
  }
}

Query Draw(const Distribution& dist, Engine& rng) {
  return std::visit(
      Overloaded{
          [&](const UniformSecondPrice& u) {
            const double v = DrawUniform(rng, u.v_lo, u.v_hi);
            const double d = DrawUniform(rng, u.d_lo, u.d_hi);
            return Query{v, AuctionModel::MakeSecondPrice(d)};
          },
          [&](const BetaSecondPrice& b) {
            const double v = DrawBeta(rng, b.a_v, b.b_v);
            const double d = DrawBeta(rng, b.a_d, b.b_d);
            return Query{v, AuctionModel::MakeSecondPrice(d)};
          },
          [&](const CorrelatedSecondPrice& c) {
            const double v = DrawUniform(rng, c.v_lo, c.v_hi);
            const double e = DrawUniform(rng, -c.noise, c.noise);
            const double d = std::clamp(v - c.margin + e, 0.0, 1.0);
            return Query{v, AuctionModel::MakeSecondPrice(d)};
          },
          [&](const LinearAllocationUniform& l) {
            return Query{DrawUniform(rng, l.v_lo, l.v_hi),
                         AuctionModel::MakeLinear()};
          },
      },
      dist);
}

}  // namespace

std::string DistributionName(const Distribution& dist) {
  return std::visit(
      Overloaded{
          [](const UniformSecondPrice&) { return "uniform_second_price"; },
          [](const BetaSecondPrice&) { return "beta_second_price"; },
          [](const CorrelatedSecondPrice&) {
            return "correlated_second_price";
          },
          [](const LinearAllocationUniform&) {
            return "linear_allocation_uniform";
          },
      },
      dist);
}

void ValidateDistribution(const Distribution& dist) {
  std::visit(Overloaded{
                 [](const UniformSecondPrice& u) {
                   RequireUnitRange(u.v_lo, u.v_hi, "value");
                   RequireUnitRange(u.d_lo, u.d_hi, "competing bid");
                 },
                 [](const BetaSecondPrice& b) {
                   RequirePositive(b.a_v, "a_v");
                   RequirePositive(b.b_v, "b_v");
                   RequirePositive(b.a_d, "a_d");
                   RequirePositive(b.b_d, "b_d");
                 },
                 [](const CorrelatedSecondPrice& c) {
                   RequireUnitRange(c.v_lo, c.v_hi, "value");
                   if (!(c.margin >= -1.0 && c.margin <= 1.0)) {
                     throw ConfigError("margin must lie in [-1, 1]");
                   }
                   if (!(c.noise >= 0.0 && c.noise <= 1.0)) {
                     throw ConfigError("noise must lie in [0, 1]");
                   }
                 },
                 [](const LinearAllocationUniform& l) {
                   RequireUnitRange(l.v_lo, l.v_hi, "value");
                 },
             },
             dist);
}

double ValueSupportMax(const Distribution& dist) {
  return std::visit(
      Overloaded{
          [](const UniformSecondPrice& u) { return u.v_hi; },
          [](const BetaSecondPrice&) { return 1.0; },
          [](const CorrelatedSecondPrice& c) { return c.v_hi; },
          [](const LinearAllocationUniform& l) { return l.v_hi; },
      },
      dist);
}

std::vector<Query> GenerateStream(const Distribution& dist, int64_t horizon,
                                  uint64_t seed) {
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  ValidateDistribution(dist);
  Engine rng(seed);
  std::vector<Query> stream;
  stream.reserve(static_cast<size_t>(horizon));
  for (int64_t t = 0; t < horizon; ++t) stream.push_back(Draw(dist, rng));
  return stream;
}

double EstimateBeta(const Distribution& dist, int64_t samples, uint64_t seed,
                    double target_ros) {
  if (samples < 1) throw ConfigError("beta samples must be >= 1");
  ValidateDistribution(dist);
  Engine rng(seed);
  double total = 0.0;
  for (int64_t i = 0; i < samples; ++i) {
    Query q = Draw(dist, rng);
    q.value /= target_ros;
    const double x = q.auction.Allocation(q.value);
    const double p = x == 0.0 ? 0.0 : q.auction.Payment(q.value);
    total += std::max(0.0, q.value * x - p);
  }
  return total / static_cast<double>(samples);
}

}  // namespace rosbid
