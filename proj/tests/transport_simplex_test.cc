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

#include "wdp/transport_simplex.h"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"

namespace wdp {
namespace {

TEST(TransportSimplexTest, SingleCell) {
  const std::vector<double> s = {1.0}, d = {1.0}, c = {3.0};
  TransportSolution sol = *SolveTransport(s, d, c);
  EXPECT_EQ(sol.cost, 3.0);
  EXPECT_EQ(sol.plan, (std::vector<double>{1.0}));
}

TEST(TransportSimplexTest, TwoByTwoHandComputed) {
  // p = {0: 1/2, 1: 1/2}, q = {0: 1/4, 1: 3/4}, cost |x - y|: move 1/4 from
  // 0 to 1.
  const std::vector<double> s = {0.5, 0.5}, d = {0.25, 0.75};
  const std::vector<double> c = {0, 1, 1, 0};
  TransportSolution sol = *SolveTransport(s, d, c);
  EXPECT_NEAR(sol.cost, 0.25, 1e-15);
  EXPECT_NEAR(sol.plan[1], 0.25, 1e-15);
}

TEST(TransportSimplexTest, PlanIsFeasible) {
  std::mt19937_64 rng(40);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + trial % 13;
    const int n = 1 + (trial * 7) % 17;
    std::vector<double> s = testing::RandomWeights(rng, m);
    std::vector<double> d = testing::RandomWeights(rng, n);
    std::vector<double> c(m * n);
    for (double& v : c) v = u(rng);
    TransportSolution sol = *SolveTransport(s, d, c);
    for (int i = 0; i < m; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) {
        EXPECT_GE(sol.plan[i * n + j], 0.0);
        row += sol.plan[i * n + j];
      }
      EXPECT_NEAR(row, s[i], 1e-12);
    }
    for (int j = 0; j < n; ++j) {
      double col = 0.0;
      for (int i = 0; i < m; ++i) col += sol.plan[i * n + j];
      EXPECT_NEAR(col, d[j], 1e-12);
    }
  }
}

TEST(TransportSimplexTest, MatchesVertexEnumerationOnArbitraryCosts) {
  // Non-metric costs exercise pivots the 1-D structure would never need.
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-2.0, 5.0);
  std::uniform_int_distribution<int> size(1, 4);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = size(rng);
    const int n = size(rng);
    std::vector<double> s = testing::RandomWeights(rng, m);
    std::vector<double> d = testing::RandomWeights(rng, n);
    std::vector<double> c(m * n);
    for (double& v : c) v = u(rng);
    const double want = testing::TransportByVertexEnumeration(s, d, c);
    EXPECT_NEAR(SolveTransport(s, d, c)->cost, want, 1e-10) << "trial " << trial;
  }
}

TEST(TransportSimplexTest, HeavilyDegenerateInstances) {
  // Equal uniform marginals with ties everywhere in the cost matrix.
  for (int k : {8, 16, 32, 64}) {
    std::vector<double> s(k, 1.0 / k), d(k, 1.0 / k), c(k * k);
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) c[i * k + j] = std::abs((i * 3) % k - j) % 3;
    }
    absl::StatusOr<TransportSolution> sol = SolveTransport(s, d, c);
    ASSERT_TRUE(sol.ok()) << sol.status();
    EXPECT_GE(sol->cost, -1e-15);
  }
}

TEST(TransportSimplexTest, RejectsBadInput) {
  const std::vector<double> s = {0.5, 0.5}, d = {1.0}, bad_d = {0.9};
  EXPECT_FALSE(SolveTransport(s, d, std::vector<double>{1.0}).ok());
  EXPECT_FALSE(SolveTransport(s, bad_d, std::vector<double>{1.0, 1.0}).ok());
  EXPECT_FALSE(SolveTransport({}, d, {}).ok());
  const std::vector<double> neg = {-0.5, 1.5};
  EXPECT_FALSE(SolveTransport(neg, d, std::vector<double>{1.0, 1.0}).ok());
}

}  // namespace
}  // namespace wdp
