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

#ifndef WDP_ACCOUNTANT_H_
#define WDP_ACCOUNTANT_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "wdp/composition.h"
#include "wdp/counter_rng.h"
#include "wdp/mechanisms.h"

namespace wdp {

// Parameters of the Wasserstein accountant for subsampled Gaussian
// iterations.
struct AccountantConfig {
  double q = 0.01;      // subsampling probability, [0, 1]
  double sigma = 1.0;   // Gaussian noise scale, > 0
  double mu = 1.0;      // WDP order, >= 1
  double beta = 1.0;    // tail parameter, > 0
  double delta = 1e-5;  // failure probability, (0, 1)
  int grad_dim = 1;     // components of the noised vector, >= 1

  absl::Status Validate() const;

  // (2 - 2q + 2q^2) sigma^2, the per-component noise variance after
  // subsampling.
  double NoiseVariance() const;
};

// Per-step losses in step order.
struct AccountantState {
  std::vector<double> losses;

  size_t steps() const { return losses.size(); }
  double total() const;
};

// How to reduce sampled gradient-pair distances to the single d_t that
// enters the per-step loss.
struct PairDistancePolicy {
  enum class Kind { kMin, kMax, kQuantile, kFixed };

  Kind kind = Kind::kMin;
  // Quantile level for kQuantile, distance for kFixed.
  double value = 0.0;

  static PairDistancePolicy Min() { return {Kind::kMin, 0.0}; }
  static PairDistancePolicy Max() { return {Kind::kMax, 0.0}; }
  static PairDistancePolicy Quantile(double p) { return {Kind::kQuantile, p}; }
  static PairDistancePolicy Fixed(double d) { return {Kind::kFixed, d}; }

  // Accepts "min", "max", "quantile:<p>" and "fixed:<d>".
  static absl::StatusOr<PairDistancePolicy> Parse(std::string_view text);
  std::string ToString() const;
};

struct PairDistanceEstimate {
  double d = 0.0;
  size_t pairs_examined = 0;
};

// Unordered index pairs (i < j) over n items. When count is 0 or at least
// n(n-1)/2, every pair is listed in lexicographic order; otherwise count
// pairs are drawn uniformly with replacement from rng.
std::vector<std::pair<size_t, size_t>> SamplePairs(size_t n, size_t count,
                                                   CounterRng& rng);

// Reduces l2 distances between per-example gradients to d_t. gradients is
// row-major with `dim` values per example.
absl::StatusOr<PairDistanceEstimate> EstimatePairDistance(
    std::span<const double> gradients, size_t dim,
    const PairDistancePolicy& policy, size_t sample_pairs, CounterRng& rng);

absl::StatusOr<PairDistanceEstimate> EstimatePairDistance(
    const std::vector<std::vector<double>>& gradients,
    const PairDistancePolicy& policy, size_t sample_pairs, CounterRng& rng);

// Wasserstein loss of one step,
//   (n * E|Z|^mu)^(1/mu),  Z ~ Normal(q d, (2 - 2q + 2q^2) sigma^2),
// where every one of the n components shares Z's distribution.
absl::StatusOr<double> StepLoss(const AccountantConfig& cfg,
                                const PairDistanceEstimate& d);

// Appends a non-negative loss.
absl::StatusOr<AccountantState> Accumulate(AccountantState state, double loss);

// epsilon = sum(losses) - log(delta) / beta.
absl::StatusOr<WdpBudget> EpsilonGivenDelta(const AccountantState& state,
                                            const AccountantConfig& cfg);

// delta = exp(beta (sum(losses) - epsilon)); vacuous when >= 1.
absl::StatusOr<DeltaReport> DeltaGivenEpsilon(const AccountantState& state,
                                              const AccountantConfig& cfg,
                                              double epsilon);

// Checkpoint document: {"mu", "beta", "delta", "losses": [...], "steps"}.
struct AccountantCheckpoint {
  double mu = 1.0;
  double beta = 1.0;
  double delta = 1e-5;
  AccountantState state;
};

std::string CheckpointToJson(const AccountantCheckpoint& checkpoint);
absl::StatusOr<AccountantCheckpoint> CheckpointFromJson(std::string_view text);

}  // namespace wdp

#endif  // WDP_ACCOUNTANT_H_
