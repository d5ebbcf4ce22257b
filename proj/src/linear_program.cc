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

#include "wdp/linear_program.h"

#include <cmath>
#include <cstddef>

#include "absl/status/status.h"

namespace wdp {
namespace {

constexpr double kPivotEps = 1e-11;
constexpr int kDegenerateRunBeforeBland = 50;

// Tableau over the non-basic columns only. Row m holds the objective, row
// m + 1 the phase-one objective; column n is the artificial variable and
// column n + 1 the right-hand side.
class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp)
      : m_(static_cast<int>(lp.b.size())),
        n_(static_cast<int>(lp.c.size())),
        basic_(m_),
        nonbasic_(n_ + 1),
        d_(m_ + 2, std::vector<double>(n_ + 2, 0.0)) {
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n_; ++j) d_[i][j] = lp.a[i][j];
      d_[i][n_] = -1.0;
      d_[i][n_ + 1] = lp.b[i];
      basic_[i] = n_ + i;
    }
    for (int j = 0; j < n_; ++j) {
      nonbasic_[j] = j;
      d_[m_][j] = -lp.c[j];
    }
    nonbasic_[n_] = -1;
    d_[m_ + 1][n_] = 1.0;
  }

  absl::StatusOr<LpSolution> Solve() {
    int worst = 0;
    for (int i = 1; i < m_; ++i) {
      if (d_[i][n_ + 1] < d_[worst][n_ + 1]) worst = i;
    }
    if (m_ > 0 && d_[worst][n_ + 1] < -kPivotEps) {
      // Phase one: drive the artificial variable to zero.
      Pivot(worst, n_);
      if (!Run(2) || d_[m_ + 1][n_ + 1] < -kPivotEps) {
        return absl::FailedPreconditionError("linear program is infeasible");
      }
      for (int i = 0; i < m_; ++i) {
        if (basic_[i] != -1) continue;
        int s = 0;
        for (int j = 1; j <= n_; ++j) {
          if (s == -1 || Better(d_[i][j], nonbasic_[j], d_[i][s], nonbasic_[s])) s = j;
        }
        Pivot(i, s);
      }
    }
    if (!Run(1)) return absl::OutOfRangeError("linear program is unbounded");
    LpSolution solution;
    solution.x.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (basic_[i] < n_) solution.x[basic_[i]] = d_[i][n_ + 1];
    }
    solution.objective = d_[m_][n_ + 1];
    return solution;
  }

 private:
  static bool Better(double value, int label, double best, int best_label) {
    return value < best || (value == best && label < best_label);
  }

  void Pivot(int r, int s) {
    const double inv = 1.0 / d_[r][s];
    for (int i = 0; i < m_ + 2; ++i) {
      if (i == r || std::abs(d_[i][s]) <= 0.0) continue;
      const double factor = d_[i][s] * inv;
      std::vector<double>& row = d_[i];
      const std::vector<double>& pivot_row = d_[r];
      for (int j = 0; j < n_ + 2; ++j) row[j] -= pivot_row[j] * factor;
      row[s] = -factor;
    }
    for (int j = 0; j < n_ + 2; ++j) d_[r][j] *= inv;
    d_[r][s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  // Returns false when the objective is unbounded.
  bool Run(int phase) {
    const int objective_row = m_ + phase - 1;
    int degenerate_run = 0;
    while (true) {
      const bool bland = degenerate_run > kDegenerateRunBeforeBland;
      int s = -1;
      for (int j = 0; j <= n_; ++j) {
        if (nonbasic_[j] == -phase) continue;
        const double reduced = d_[objective_row][j];
        if (bland) {
          if (reduced < -kPivotEps && (s == -1 || nonbasic_[j] < nonbasic_[s])) s = j;
        } else if (s == -1 || Better(reduced, nonbasic_[j],
                                     d_[objective_row][s], nonbasic_[s])) {
          s = j;
        }
      }
      if (s == -1 || d_[objective_row][s] >= -kPivotEps) return true;
      int r = -1;
      for (int i = 0; i < m_; ++i) {
        if (d_[i][s] <= kPivotEps) continue;
        if (r == -1) {
          r = i;
          continue;
        }
        const double lhs = d_[i][n_ + 1] / d_[i][s];
        const double rhs = d_[r][n_ + 1] / d_[r][s];
        if (lhs < rhs || (lhs == rhs && basic_[i] < basic_[r])) r = i;
      }
      if (r == -1) return false;
      degenerate_run = d_[r][n_ + 1] <= kPivotEps ? degenerate_run + 1 : 0;
      Pivot(r, s);
    }
  }

  int m_;
  int n_;
  std::vector<int> basic_;
  std::vector<int> nonbasic_;
  std::vector<std::vector<double>> d_;
};

}  // namespace

absl::StatusOr<LpSolution> SolveLinearProgram(const LinearProgram& lp) {
  if (lp.a.size() != lp.b.size()) {
    return absl::InvalidArgumentError("constraint matrix and bounds disagree");
  }
  for (const std::vector<double>& row : lp.a) {
    if (row.size() != lp.c.size()) {
      return absl::InvalidArgumentError("constraint row width mismatch");
    }
  }
  Tableau tableau(lp);
  return tableau.Solve();
}

}  // namespace wdp
