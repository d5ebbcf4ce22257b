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

#ifndef WDP_COMPOSITION_H_
#define WDP_COMPOSITION_H_

#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "wdp/mechanisms.h"

namespace wdp {

// A non-empty list of WDP budgets sharing one order. Mixed-order input is
// brought to the smallest order in the list: (mu2, eps)-WDP implies
// (mu1, eps)-WDP for mu1 <= mu2, so epsilons carry over unchanged.
class BudgetSequence {
 public:
  static absl::StatusOr<BudgetSequence> Create(std::vector<WdpBudget> budgets);

  double mu() const { return mu_; }
  const std::vector<WdpBudget>& budgets() const { return budgets_; }

 private:
  BudgetSequence(double mu, std::vector<WdpBudget> budgets)
      : mu_(mu), budgets_(std::move(budgets)) {}

  double mu_;
  std::vector<WdpBudget> budgets_;
};

// Probabilistic (generalized) WDP: the loss exceeds epsilon with probability
// at most delta.
struct GeneralizedWdpBudget {
  double mu = 1.0;
  double epsilon = 0.0;
  double delta = 0.0;
};

// Tail probability from the advanced composition relation. A delta of 1 or
// more means the bound gives no protection; it is reported, not clamped.
struct DeltaReport {
  double delta = 0.0;
  bool vacuous = false;
};

// Disjoint data partitions: max of the epsilons.
WdpBudget ComposeParallel(const BudgetSequence& seq);

// Sequential use of one dataset: sum of the epsilons.
WdpBudget ComposeSequential(const BudgetSequence& seq);

// Datasets differing in k entries: k * epsilon.
absl::StatusOr<WdpBudget> GroupPrivacy(const WdpBudget& base, int k);

// delta = exp(beta * (sum(expected_losses) - epsilon)).
absl::StatusOr<DeltaReport> AdvancedDelta(std::span<const double> expected_losses,
                                          double epsilon, double beta);

}  // namespace wdp

#endif  // WDP_COMPOSITION_H_
