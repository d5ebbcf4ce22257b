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

#include "wdp/composition.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace wdp {

absl::StatusOr<BudgetSequence> BudgetSequence::Create(
    std::vector<WdpBudget> budgets) {
  if (budgets.empty()) {
    return absl::InvalidArgumentError("budget sequence must be non-empty");
  }
  double mu_min = budgets.front().mu;
  for (const WdpBudget& b : budgets) {
    if (absl::Status s = ValidateWdpBudget(b); !s.ok()) return s;
    mu_min = std::min(mu_min, b.mu);
  }
  for (WdpBudget& b : budgets) b.mu = mu_min;
  return BudgetSequence(mu_min, std::move(budgets));
}

WdpBudget ComposeParallel(const BudgetSequence& seq) {
  double eps = 0.0;
  for (const WdpBudget& b : seq.budgets()) eps = std::max(eps, b.epsilon);
  return WdpBudget{seq.mu(), eps};
}

WdpBudget ComposeSequential(const BudgetSequence& seq) {
  double eps = 0.0;
  for (const WdpBudget& b : seq.budgets()) eps += b.epsilon;
  return WdpBudget{seq.mu(), eps};
}

absl::StatusOr<WdpBudget> GroupPrivacy(const WdpBudget& base, int k) {
  if (absl::Status s = ValidateWdpBudget(base); !s.ok()) return s;
  if (k < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("group size must be >= 1, got %d", k));
  }
  return WdpBudget{base.mu, k * base.epsilon};
}

absl::StatusOr<DeltaReport> AdvancedDelta(std::span<const double> expected_losses,
                                          double epsilon, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("beta must be finite and > 0, got %g", beta));
  }
  if (!std::isfinite(epsilon)) {
    return absl::InvalidArgumentError("epsilon must be finite");
  }
  double total = 0.0;
  for (double loss : expected_losses) {
    if (!(loss >= 0.0) || !std::isfinite(loss)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("expected losses must be finite and >= 0, got %g", loss));
    }
    total += loss;
  }
  const double delta = std::exp(beta * (total - epsilon));
  return DeltaReport{delta, delta >= 1.0};
}

}  // namespace wdp
