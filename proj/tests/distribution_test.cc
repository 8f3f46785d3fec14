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

#include <cmath>

#include <gtest/gtest.h>

#include "rosbid/errors.h"
#include "rosbid/seed.h"

namespace rosbid {
namespace {

TEST(GenerateStreamTest, Deterministic) {
  const auto a = GenerateStream(UniformSecondPrice{}, 3, 42);
  const auto b = GenerateStream(UniformSecondPrice{}, 3, 42);
  ASSERT_EQ(a.size(), 3u);
  for (size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].value, b[i].value);
    EXPECT_EQ(a[i].auction.competing_bid(), b[i].auction.competing_bid());
  }
  const auto c = GenerateStream(UniformSecondPrice{}, 3, 43);
  EXPECT_NE(a[0].value, c[0].value);
}

TEST(GenerateStreamTest, PrefixStable) {
  // Longer horizons extend, not reshuffle, the stream of a seed.
  const auto short_stream = GenerateStream(BetaSecondPrice{2, 2, 2, 2}, 10, 5);
  const auto long_stream = GenerateStream(BetaSecondPrice{2, 2, 2, 2}, 100, 5);
  for (size_t i = 0; i < short_stream.size(); ++i) {
    EXPECT_EQ(short_stream[i].value, long_stream[i].value);
  }
}

TEST(GenerateStreamTest, DegenerateUniform) {
  for (const Query& q :
       GenerateStream(UniformSecondPrice{0.5, 0.5, 0.2, 0.2}, 2, 1)) {
    EXPECT_EQ(q.value, 0.5);
    EXPECT_EQ(q.auction.competing_bid(), 0.2);
  }
}

TEST(GenerateStreamTest, BetaMean) {
  const auto s = GenerateStream(BetaSecondPrice{2, 2, 2, 2}, 10000, 7);
  double mean = 0.0;
  for (const Query& q : s) mean += q.value;
  EXPECT_NEAR(mean / 10000.0, 0.5, 0.02);
}

TEST(GenerateStreamTest, AllDrawsInUnitInterval) {
  const std::vector<Distribution> dists = {
      UniformSecondPrice{}, BetaSecondPrice{0.5, 3, 3, 0.5},
      CorrelatedSecondPrice{0, 1, -0.2, 0.5}, LinearAllocationUniform{0.2, 0.9}};
  for (const Distribution& d : dists) {
    for (const Query& q : GenerateStream(d, 5000, 3)) {
      ASSERT_GE(q.value, 0.0);
      ASSERT_LE(q.value, 1.0);
      if (auto c = q.auction.competing_bid()) {
        ASSERT_GE(*c, 0.0);
        ASSERT_LE(*c, 1.0);
      }
    }
  }
}

TEST(GenerateStreamTest, CorrelatedFollowsValue) {
  for (const Query& q :
       GenerateStream(CorrelatedSecondPrice{0.3, 0.9, 0.1, 0.0}, 100, 3)) {
    EXPECT_DOUBLE_EQ(*q.auction.competing_bid(), q.value - 0.1);
  }
}

TEST(GenerateStreamTest, RejectsBadParameters) {
  EXPECT_THROW(GenerateStream(UniformSecondPrice{0, 1.5, 0, 1}, 1, 0),
               ConfigError);
  EXPECT_THROW(GenerateStream(UniformSecondPrice{0.6, 0.4, 0, 1}, 1, 0),
               ConfigError);
  EXPECT_THROW(GenerateStream(BetaSecondPrice{0, 1, 1, 1}, 1, 0), ConfigError);
  EXPECT_THROW(GenerateStream(CorrelatedSecondPrice{0, 1, 0, 2}, 1, 0),
               ConfigError);
  EXPECT_THROW(GenerateStream(UniformSecondPrice{}, 0, 0), ConfigError);
}

TEST(EstimateBetaTest, Examples) {
  EXPECT_NEAR(EstimateBeta(UniformSecondPrice{0.5, 0.5, 0.2, 0.2}, 100, 1),
              0.3, 1e-15);
  EXPECT_NEAR(EstimateBeta(UniformSecondPrice{}, 1000000, 2), 1.0 / 6.0,
              0.005);
  EXPECT_EQ(EstimateBeta(UniformSecondPrice{0, 0.4, 0.5, 1}, 1000, 3), 0.0);
}

TEST(EstimateBetaTest, LinearAuction) {
  // Truthful slack v x(v) - p(v) = v^2 - v^2/2; mean 1/6 over U[0, 1].
  EXPECT_NEAR(EstimateBeta(LinearAllocationUniform{}, 1000000, 4), 1.0 / 6.0,
              0.003);
}

TEST(EstimateBetaTest, TargetRosNormalization) {
  // Values halved: E[max(0, v/2 - d)] with v = 0.8, d = 0.1 is 0.3.
  EXPECT_NEAR(EstimateBeta(UniformSecondPrice{0.8, 0.8, 0.1, 0.1}, 10, 1, 2.0),
              0.3, 1e-15);
}

TEST(SeedTest, DerivedSeedsDiffer) {
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(1, 1));
  EXPECT_NE(DeriveSeed(1, 0), DeriveSeed(2, 0));
  // Reference splitmix64 output for input 0.
  EXPECT_EQ(SplitMix64(0), 0xe220a8397b1dcdafULL);
}

}  // namespace
}  // namespace rosbid
