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

#include "wdp/mechanisms.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

namespace wdp {
namespace {

MechanismSpec Laplace(double lambda, double sens) {
  return *MechanismSpec::Create(MechanismKind::kLaplace, lambda, sens);
}
MechanismSpec Gaussian(double sigma, double sens) {
  return *MechanismSpec::Create(MechanismKind::kGaussian, sigma, sens);
}

TEST(MechanismSpecTest, Validates) {
  EXPECT_FALSE(MechanismSpec::Create(MechanismKind::kLaplace, 0.0, 1.0).ok());
  EXPECT_FALSE(MechanismSpec::Create(MechanismKind::kGaussian, 1.0, -1.0).ok());
  EXPECT_TRUE(MechanismSpec::Create(MechanismKind::kGaussian, 1.0, 0.0).ok());
}

// Expected values below were evaluated with mpmath at 30 digits.
TEST(WdpLaplaceTest, ClosedForm) {
  EXPECT_NEAR(WdpLaplace(Laplace(1, 1), 1)->epsilon, 0.428881942480353398, 1e-15);
  EXPECT_NEAR(WdpLaplace(Laplace(2, 1), 2)->epsilon, 0.339700477528917730, 1e-15);
  EXPECT_EQ(WdpLaplace(Laplace(3, 0), 4)->epsilon, 0.0);
  EXPECT_EQ(WdpLaplace(Laplace(2, 1), 2)->mu, 2.0);
}

TEST(WdpLaplaceTest, RejectsMismatchedKindAndOrder) {
  EXPECT_EQ(WdpLaplace(Gaussian(1, 1), 1).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(WdpLaplace(Laplace(1, 1), 0.5).ok());
}

TEST(WdpGaussianTest, ClosedForm) {
  EXPECT_DOUBLE_EQ(WdpGaussian(Gaussian(1, 1), 1)->epsilon, 0.5);
  EXPECT_NEAR(WdpGaussian(Gaussian(2, 1), 2)->epsilon, 0.353553390593273762, 1e-15);
  EXPECT_EQ(WdpGaussian(Gaussian(2, 0), 3)->epsilon, 0.0);
  EXPECT_FALSE(WdpGaussian(Laplace(1, 1), 1).ok());
}

TEST(WdpGaussianTest, StrictlyDecreasingInSigma) {
  for (double mu : {1.0, 2.0, 5.0}) {
    double prev = INFINITY;
    for (double sigma = 0.05; sigma < 20.0; sigma *= 1.3) {
      const double eps = WdpGaussian(Gaussian(sigma, 1.0), mu)->epsilon;
      EXPECT_LT(eps, prev);
      prev = eps;
    }
  }
}

TEST(WdpBudgetTest, NonDecreasingInOrderWhenRatioAtMostOne) {
  for (double sigma : {1.0, 1.5, 4.0}) {
    double prev = 0.0;
    for (double mu = 1.0; mu <= 20.0; mu += 0.5) {
      const double eps = WdpGaussian(Gaussian(sigma, 1.0), mu)->epsilon;
      EXPECT_GE(eps, prev);
      prev = eps;
    }
  }
  // The Laplace root sqrt(2 KL) is <= 1 for every lambda >= ~0.86.
  for (double lambda : {1.0, 2.0, 10.0}) {
    double prev = 0.0;
    for (double mu = 1.0; mu <= 20.0; mu += 0.5) {
      const double eps = WdpLaplace(Laplace(lambda, 1.0), mu)->epsilon;
      EXPECT_GE(eps, prev);
      prev = eps;
    }
  }
}

TEST(WdpBudgetTest, SensitivityScaling) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.1, 5.0);
  for (int i = 0; i < 200; ++i) {
    const double scale = u(rng);
    const double sens = u(rng);
    const double c = u(rng);
    const double mu = 1.0 + u(rng);
    // Laplace: linear for every order.
    EXPECT_NEAR(WdpLaplace(Laplace(scale, c * sens), mu)->epsilon,
                c * WdpLaplace(Laplace(scale, sens), mu)->epsilon, 1e-12);
    // Gaussian: sensitivity sits under the 1/mu root.
    EXPECT_NEAR(WdpGaussian(Gaussian(scale, c * sens), 1.0)->epsilon,
                c * WdpGaussian(Gaussian(scale, sens), 1.0)->epsilon, 1e-12);
    EXPECT_NEAR(WdpGaussian(Gaussian(scale, c * sens), mu)->epsilon,
                std::pow(c, 1.0 / mu) * WdpGaussian(Gaussian(scale, sens), mu)->epsilon,
                1e-12);
  }
}

TEST(RdpGaussianTest, TableFormula) {
  EXPECT_DOUBLE_EQ(RdpGaussian(1, 2)->epsilon, 1.0);
  EXPECT_DOUBLE_EQ(RdpGaussian(2, 2)->epsilon, 0.25);
  EXPECT_NEAR(RdpGaussian(100, 2)->epsilon, 1e-4, 1e-18);
  EXPECT_EQ(RdpGaussian(1, 1).status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(RdpGaussian(1, 0.5).ok());
}

TEST(RdpLaplaceTest, TableFormula) {
  EXPECT_NEAR(RdpLaplace(1, 1)->epsilon, std::exp(-1.0), 1e-16);
  EXPECT_NEAR(RdpLaplace(1, 2)->epsilon, 0.619123629998592883, 1e-15);
  EXPECT_NEAR(RdpLaplace(1e6, 2)->epsilon, 0.0, 1e-5);
  EXPECT_GE(RdpLaplace(1e6, 2)->epsilon, 0.0);
}

TEST(RdpLaplaceTest, ContinuousAcrossUnitOrder) {
  for (double lambda : {0.3, 1.0, 2.0, 10.0}) {
    EXPECT_NEAR(RdpLaplace(lambda, 1.0 + 1e-6)->epsilon,
                RdpLaplace(lambda, 1.0)->epsilon, 1e-4);
  }
  // Inside the branch tolerance the KL branch is used verbatim.
  EXPECT_EQ(RdpLaplace(1.0, 1.0 + 1e-10)->epsilon, RdpLaplace(1.0, 1.0)->epsilon);
}

TEST(RdpLaplaceTest, LargeOrderApproachesPureDp) {
  // D_inf of Laplace with unit sensitivity is 1/lambda.
  EXPECT_NEAR(RdpLaplace(2.0, 1e5)->epsilon, 0.5, 1e-4);
}

TEST(DpTest, LaplaceAndGaussian) {
  EXPECT_DOUBLE_EQ(DpLaplace(1)->epsilon, 1.0);
  EXPECT_DOUBLE_EQ(DpLaplace(2)->epsilon, 0.5);
  EXPECT_NEAR(DpLaplace(1e9)->epsilon, 0.0, 1e-8);
  EXPECT_EQ(DpLaplace(1)->delta, 0.0);
  EXPECT_TRUE(DpGaussian(1)->unbounded());
  EXPECT_FALSE(DpLaplace(1)->unbounded());
}

TEST(AttackSuccessTest, LogisticOfEpsilon) {
  EXPECT_DOUBLE_EQ(*AttackSuccessProbability(0.0), 0.5);
  EXPECT_NEAR(*AttackSuccessProbability(0.76), 0.681, 5e-4);
  EXPECT_NEAR(*AttackSuccessProbability(2.2), 0.900, 3e-3);
  EXPECT_FALSE(AttackSuccessProbability(-0.1).ok());
  for (double e = 0.0; e < 30.0; e += 0.5) {
    const double p = *AttackSuccessProbability(e);
    EXPECT_GE(p, 0.5);
    EXPECT_LE(p, 1.0);
  }
}

}  // namespace
}  // namespace wdp
