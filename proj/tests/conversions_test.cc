// Copyright 2026 The WDP Accountant Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wdp/conversions.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

namespace wdp {
namespace {

const LipschitzAssumption kUnitL{1.0};

TEST(DpToWdpTest, ClosedForm) {
  // mpmath at 30 digits.
  EXPECT_NEAR(DpToWdp(1, 1, 1)->epsilon, 0.926898545812605436, 1e-15);
  EXPECT_NEAR(DpToWdp(1, 1, 2)->epsilon, 0.680771087008182742, 1e-15);
  EXPECT_EQ(DpToWdp(0, 1, 1)->epsilon, 0.0);
  EXPECT_FALSE(DpToWdp(-1, 1, 1).ok());
  EXPECT_FALSE(DpToWdp(1, 1, 0.9).ok());
}

TEST(RdpToWdpTest, ClosedFormIgnoresAlpha) {
  EXPECT_DOUBLE_EQ(RdpToWdp({2.0, 2.0}, 1, 1)->epsilon, 1.0);
  EXPECT_DOUBLE_EQ(RdpToWdp({7.0, 2.0}, 1, 1)->epsilon, 1.0);
  EXPECT_EQ(RdpToWdp({2.0, 0.0}, 1, 1)->epsilon, 0.0);
  EXPECT_DOUBLE_EQ(RdpToWdp({3.0, 0.5}, 2, 1)->epsilon, 1.0);
  EXPECT_FALSE(RdpToWdp({0.5, 1.0}, 1, 1).ok());
}

TEST(WdpToRdpTest, ClosedForm) {
  EXPECT_DOUBLE_EQ(WdpToRdp({1, 1}, kUnitL, 2)->epsilon, 2.0);
  EXPECT_EQ(WdpToRdp({1, 0}, kUnitL, 2)->epsilon, 0.0);
  EXPECT_DOUBLE_EQ(WdpToRdp({1, 0.25}, kUnitL, 3)->epsilon, 0.75);
  EXPECT_EQ(WdpToRdp({1, 1}, kUnitL, 1).status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(WdpToDpTest, ClosedForm) {
  EXPECT_DOUBLE_EQ(WdpToDp({1, 1}, kUnitL)->epsilon, 1.0);
  EXPECT_NEAR(WdpToDp({1, 0.04}, kUnitL)->epsilon, 0.2, 1e-15);
  EXPECT_DOUBLE_EQ(WdpToDp({2, 1}, LipschitzAssumption{3.0})->epsilon, 3.0);
}

TEST(WdpToZcdpTest, ClosedForm) {
  EXPECT_DOUBLE_EQ(*WdpToZcdp({1, 1}, kUnitL), 0.5);
  EXPECT_EQ(*WdpToZcdp({1, 0}, kUnitL), 0.0);
  EXPECT_NEAR(*WdpToZcdp({1, 0.04}, kUnitL), 0.02, 1e-15);
}

TEST(LipschitzAssumptionTest, Validates) {
  EXPECT_FALSE(LipschitzAssumption::Create(0.0).ok());
  EXPECT_TRUE(LipschitzAssumption::Create(2.0).ok());
}

TEST(ConversionPropertyTest, MonotoneInEpsilonAndNonNegative) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> eps(0.0, 5.0);
  std::uniform_real_distribution<double> pos(0.1, 4.0);
  for (int i = 0; i < 500; ++i) {
    double a = eps(rng);
    double b = eps(rng);
    if (a > b) std::swap(a, b);
    const double mu = 1.0 + pos(rng);
    const double sens = pos(rng);
    const double alpha = 1.0 + pos(rng);
    const LipschitzAssumption lip{pos(rng)};
    EXPECT_LE(DpToWdp(a, sens, mu)->epsilon, DpToWdp(b, sens, mu)->epsilon);
    EXPECT_LE(RdpToWdp({alpha, a}, sens, mu)->epsilon,
              RdpToWdp({alpha, b}, sens, mu)->epsilon);
    EXPECT_LE(WdpToRdp({mu, a}, lip, alpha)->epsilon,
              WdpToRdp({mu, b}, lip, alpha)->epsilon);
    EXPECT_LE(WdpToDp({mu, a}, lip)->epsilon, WdpToDp({mu, b}, lip)->epsilon);
    EXPECT_LE(*WdpToZcdp({mu, a}, lip), *WdpToZcdp({mu, b}, lip));
    EXPECT_GE(DpToWdp(a, sens, mu)->epsilon, 0.0);
    EXPECT_GE(WdpToRdp({mu, a}, lip, alpha)->epsilon, 0.0);
  }
}

TEST(ConversionPropertyTest, HomogeneousInSensitivity) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> pos(0.1, 4.0);
  for (int i = 0; i < 300; ++i) {
    const double eps = pos(rng);
    const double sens = pos(rng);
    const double c = pos(rng);
    const double mu = 1.0 + pos(rng);
    EXPECT_NEAR(DpToWdp(eps, c * sens, mu)->epsilon,
                c * DpToWdp(eps, sens, mu)->epsilon, 1e-12);
    EXPECT_NEAR(RdpToWdp({2.0, eps}, c * sens, mu)->epsilon,
                c * RdpToWdp({2.0, eps}, sens, mu)->epsilon, 1e-12);
  }
}

TEST(ConversionPropertyTest, RdpFromWdpDecreasesTowardDpLimit) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> pos(0.1, 4.0);
  for (int i = 0; i < 100; ++i) {
    const WdpBudget wdp{1.0 + pos(rng), pos(rng)};
    const LipschitzAssumption lip{pos(rng)};
    double prev = INFINITY;
    for (double alpha : {1.01, 1.5, 2.0, 4.0, 16.0, 100.0, 1e4}) {
      const double eps = WdpToRdp(wdp, lip, alpha)->epsilon;
      EXPECT_LT(eps, prev);
      prev = eps;
    }
    const double limit = WdpToDp(wdp, lip)->epsilon;
    EXPECT_NEAR(WdpToRdp(wdp, lip, 1e6)->epsilon, limit, 1e-5 * limit);
  }
}

TEST(RoundTripTest, ReportsInflation) {
  RoundTripReport r = *DpRoundTrip(1.0, 1.0, 1.0, kUnitL);
  EXPECT_DOUBLE_EQ(r.input_epsilon, 1.0);
  EXPECT_NEAR(r.wdp.epsilon, 0.926898545812605436, 1e-15);
  EXPECT_NEAR(r.output_epsilon, std::sqrt(0.926898545812605436), 1e-15);
  EXPECT_NEAR(r.inflation, r.output_epsilon, 1e-15);
  EXPECT_EQ(DpRoundTrip(0.0, 1.0, 1.0, kUnitL)->inflation, 1.0);
}

}  // namespace
}  // namespace wdp
