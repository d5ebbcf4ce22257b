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

#include "wdp/empirical_ot.h"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"

namespace wdp {
namespace {

DiscreteDist Dist(std::vector<double> atoms, std::vector<double> weights) {
  return *DiscreteDist::Create(std::move(atoms), std::move(weights));
}

DiscreteDist RandomDist(std::mt19937_64& rng, int max_atoms, double range = 5.0) {
  std::uniform_int_distribution<int> size(1, max_atoms);
  const int k = size(rng);
  return Dist(testing::RandomAtoms(rng, k, range), testing::RandomWeights(rng, k));
}

TEST(DiscreteDistTest, SortsAndMergesAtoms) {
  DiscreteDist d = Dist({2.0, 0.0, 2.0}, {0.25, 0.5, 0.25});
  EXPECT_EQ(d.atoms(), (std::vector<double>{0.0, 2.0}));
  EXPECT_EQ(d.weights(), (std::vector<double>{0.5, 0.5}));
}

TEST(DiscreteDistTest, Validates) {
  EXPECT_FALSE(DiscreteDist::Create({}, {}).ok());
  EXPECT_FALSE(DiscreteDist::Create({0.0}, {0.9}).ok());
  EXPECT_FALSE(DiscreteDist::Create({0.0, 1.0}, {1.5, -0.5}).ok());
  EXPECT_FALSE(DiscreteDist::Create({NAN}, {1.0}).ok());
  EXPECT_FALSE(DiscreteDist::Create({0.0, 1.0}, {1.0}).ok());
}

TEST(DiscreteDistTest, JsonArrayOfPairs) {
  DiscreteDist d = *DiscreteDist::FromJson("[[0, 0.25], [1.5, 0.75]]");
  EXPECT_EQ(d.atoms(), (std::vector<double>{0.0, 1.5}));
  EXPECT_EQ(d.ToJson(), "[[0.0,0.25],[1.5,0.75]]");
  EXPECT_EQ(DiscreteDist::FromJson(d.ToJson())->weights(), d.weights());
  EXPECT_FALSE(DiscreteDist::FromJson("{}").ok());
  EXPECT_FALSE(DiscreteDist::FromJson("[[0, 0.5, 1]]").ok());
  EXPECT_FALSE(DiscreteDist::FromJson("[[0, \"a\"]]").ok());
}

TEST(DiscreteDistTest, JsonRoundTripProperty) {
  std::mt19937_64 rng(50);
  for (int i = 0; i < 100; ++i) {
    DiscreteDist d = RandomDist(rng, 20);
    DiscreteDist back = *DiscreteDist::FromJson(d.ToJson());
    EXPECT_EQ(back.atoms(), d.atoms());
    EXPECT_EQ(back.weights(), d.weights());
  }
}

TEST(Wasserstein1dSamplesTest, Examples) {
  const std::vector<double> a = {0, 1, 2};
  for (double mu : {1.0, 2.0, 3.5}) EXPECT_EQ(*Wasserstein1dSamples(a, a, mu), 0.0);
  const std::vector<double> x = {0, 1}, y = {2, 1};
  // Couplings: {0-1, 1-2} costs 1 each; {0-2, 1-1} costs 2 + 0. Sorted wins.
  EXPECT_DOUBLE_EQ(*Wasserstein1dSamples(x, y, 1.0), 1.0);
  EXPECT_FALSE(Wasserstein1dSamples(x, a, 1.0).ok());
  EXPECT_FALSE(Wasserstein1dSamples({}, {}, 1.0).ok());
  EXPECT_FALSE(Wasserstein1dSamples(x, y, 0.5).ok());
}

TEST(Wasserstein1dSamplesTest, ShiftedGaussians) {
  std::mt19937_64 rng(51);
  std::normal_distribution<double> n0(0.0, 1.0), n1(1.0, 1.0);
  std::vector<double> x(100000), y(100000);
  for (double& v : x) v = n0(rng);
  for (double& v : y) v = n1(rng);
  EXPECT_NEAR(*Wasserstein1dSamples(x, y, 1.0), 1.0, 0.02);
}

TEST(WassersteinDiscreteTest, Examples) {
  for (OtMethod method : {OtMethod::kQuantile, OtMethod::kNetworkSimplex}) {
    DiscreteDist p = Dist({0, 1}, {0.5, 0.5});
    DiscreteDist q = Dist({0, 1}, {0.25, 0.75});
    EXPECT_EQ(*WassersteinDiscrete(p, p, 2.0, method), 0.0);
    EXPECT_NEAR(*WassersteinDiscrete(DiscreteDist::PointMass(0), DiscreteDist::PointMass(3),
                                     2.0, method),
                3.0, 1e-15);
    EXPECT_NEAR(*WassersteinDiscrete(p, q, 1.0, method), 0.25, 1e-15);
  }
}

TEST(WassersteinDiscreteTest, SupportLimit) {
  std::vector<double> atoms(kMaxSupportAtoms + 1), w(kMaxSupportAtoms + 1,
                                                     1.0 / (kMaxSupportAtoms + 1));
  for (size_t i = 0; i < atoms.size(); ++i) atoms[i] = static_cast<double>(i);
  absl::StatusOr<DiscreteDist> big = DiscreteDist::Create(atoms, w);
  ASSERT_TRUE(big.ok()) << big.status();
  EXPECT_EQ(WassersteinDiscrete(*big, DiscreteDist::PointMass(0), 1.0).status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_FALSE(KantorovichDual1d(*big, DiscreteDist::PointMass(0)).ok());
}

TEST(WassersteinDiscreteTest, QuantileCouplingAgreesWithNetworkSimplex) {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 300; ++i) {
    DiscreteDist p = RandomDist(rng, 24);
    DiscreteDist q = RandomDist(rng, 24);
    for (double mu : {1.0, 1.5, 2.0, 3.0}) {
      const double fast = *TransportCost(p, q, mu, OtMethod::kQuantile);
      const double exact = *TransportCost(p, q, mu, OtMethod::kNetworkSimplex);
      EXPECT_NEAR(fast, exact, 1e-10 * std::max(1.0, exact)) << "mu " << mu;
    }
  }
}

TEST(WassersteinDiscreteTest, MetricAxiomsSmoke) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 200; ++i) {
    // Common support for the triangle check.
    const int k = 1 + i % 10;
    const std::vector<double> atoms = testing::RandomAtoms(rng, k, 4.0);
    DiscreteDist p = Dist(atoms, testing::RandomWeights(rng, k));
    DiscreteDist q = Dist(atoms, testing::RandomWeights(rng, k));
    DiscreteDist r = Dist(atoms, testing::RandomWeights(rng, k));
    for (double mu : {1.0, 1.5, 2.0, 3.0}) {
      const double pq = *WassersteinDiscrete(p, q, mu);
      EXPECT_NEAR(pq, *WassersteinDiscrete(q, p, mu), 1e-12);
      EXPECT_GE(pq, 0.0);
      EXPECT_LE(*WassersteinDiscrete(p, r, mu),
                pq + *WassersteinDiscrete(q, r, mu) + 1e-9);
    }
    EXPECT_LE(*WassersteinDiscrete(p, q, 1.0), *WassersteinDiscrete(p, q, 2.0) + 1e-9);
  }
}

TEST(KantorovichDualTest, Examples) {
  DiscreteDist p = Dist({0, 1}, {0.5, 0.5});
  DiscreteDist q = Dist({0, 1}, {0.25, 0.75});
  EXPECT_NEAR(*KantorovichDual1d(p, p), 0.0, 1e-12);
  EXPECT_NEAR(*KantorovichDual1d(DiscreteDist::PointMass(0), DiscreteDist::PointMass(3)), 3.0,
              1e-12);
  EXPECT_NEAR(*KantorovichDual1d(p, q), 0.25, 1e-12);
}

TEST(KantorovichDualTest, MatchesPrimalOnDisjointSupports) {
  std::mt19937_64 rng(54);
  for (int i = 0; i < 60; ++i) {
    DiscreteDist p = RandomDist(rng, 12);
    DiscreteDist q = RandomDist(rng, 12);
    EXPECT_NEAR(*KantorovichDual1d(p, q),
                *WassersteinDiscrete(p, q, 1.0, OtMethod::kNetworkSimplex), 1e-9);
  }
}

TEST(PushforwardTest, Examples) {
  DiscreteDist p = Dist({0, 1}, {0.5, 0.5});
  DiscreteDist q = Dist({0, 1}, {0.25, 0.75});
  PushforwardReport id = *PushforwardCheck(p, q, [](double x) { return x; }, 1.0);
  EXPECT_EQ(id.after, id.before);
  EXPECT_TRUE(id.non_expansive);
  PushforwardReport constant = *PushforwardCheck(p, q, [](double) { return 7.0; }, 1.0);
  EXPECT_EQ(constant.after, 0.0);
  PushforwardReport half = *PushforwardCheck(p, q, [](double x) { return x / 2; }, 1.0);
  EXPECT_NEAR(half.before, 0.25, 1e-15);
  EXPECT_NEAR(half.after, 0.125, 1e-15);
}

TEST(PushforwardTest, LipschitzMapsNeverExpand) {
  std::mt19937_64 rng(55);
  std::uniform_real_distribution<double> slope(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    DiscreteDist p = RandomDist(rng, 16);
    DiscreteDist q = RandomDist(rng, 16);
    const double a = slope(rng);
    const double cut = slope(rng);
    auto map = [a, cut](double x) { return std::min(std::abs(a * x), 2.0 + cut); };
    for (double mu : {1.0, 2.0}) {
      EXPECT_TRUE(PushforwardCheck(p, q, map, mu)->non_expansive);
    }
  }
}

TEST(PushforwardTest, ExpansiveMapIsMeasuredNotGuaranteed) {
  DiscreteDist p = Dist({0, 1}, {0.5, 0.5});
  DiscreteDist q = Dist({0, 1}, {0.25, 0.75});
  PushforwardReport r = *PushforwardCheck(p, q, [](double x) { return 3 * x; }, 1.0);
  EXPECT_NEAR(r.after, 0.75, 1e-15);
  EXPECT_FALSE(r.non_expansive);
}

TEST(MechanismAuditTest, ShiftedGaussianDistanceIsSensitivity) {
  MechanismSpec spec = *MechanismSpec::Create(MechanismKind::kGaussian, 1.0, 1.0);
  MechanismAuditReport r = *MechanismAudit(spec, 1.0, 100000, 7);
  EXPECT_NEAR(r.empirical, 1.0, 0.02);
  EXPECT_DOUBLE_EQ(r.closed_form, 0.5);
  EXPECT_TRUE(r.empirical_exceeds_closed_form);
  EXPECT_EQ(r.samples, 100000u);
  // Same seed, same numbers.
  EXPECT_EQ(MechanismAudit(spec, 1.0, 100000, 7)->empirical, r.empirical);
}

TEST(MechanismAuditTest, LaplaceShift) {
  MechanismSpec spec = *MechanismSpec::Create(MechanismKind::kLaplace, 1.0, 2.0);
  MechanismAuditReport r = *MechanismAudit(spec, 2.0, 100000, 3);
  EXPECT_NEAR(r.empirical, 2.0, 0.04);
  EXPECT_FALSE(MechanismAudit(spec, 1.0, 0, 3).ok());
}

}  // namespace
}  // namespace wdp
