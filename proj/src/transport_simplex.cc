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

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace wdp {
namespace {

constexpr int kDegenerateRunBeforeBland = 50;
constexpr int kMaxPivots = 1000000;

struct BasicCell {
  int row;
  int col;
  double flow;
};

class TransportTableau {
 public:
  TransportTableau(std::span<const double> supply, std::vector<double> demand,
                   std::span<const double> cost)
      : m_(static_cast<int>(supply.size())),
        n_(static_cast<int>(demand.size())),
        cost_(cost),
        slot_(static_cast<size_t>(m_) * n_, -1) {
    double max_cost = 0.0;
    for (double c : cost) max_cost = std::max(max_cost, std::abs(c));
    tolerance_ = 1e-12 * (1.0 + max_cost);
    NorthwestCorner(std::vector<double>(supply.begin(), supply.end()),
                    std::move(demand));
  }

  absl::Status Solve() {
    bool bland = false;
    int degenerate_run = 0;
    while (true) {
      if (pivots_ >= kMaxPivots) {
        return absl::InternalError("transport simplex exceeded pivot limit");
      }
      ComputePotentials();
      int enter_row = -1;
      int enter_col = -1;
      double best = -tolerance_;
      for (int i = 0; i < m_ && !(bland && enter_row >= 0); ++i) {
        for (int j = 0; j < n_; ++j) {
          if (slot_[Index(i, j)] >= 0) continue;
          const double reduced = Cost(i, j) - u_[i] - v_[j];
          if (reduced < best) {
            best = reduced;
            enter_row = i;
            enter_col = j;
            if (bland) break;
          }
        }
      }
      if (enter_row < 0) return absl::OkStatus();
      const double theta = Pivot(enter_row, enter_col, bland);
      ++pivots_;
      degenerate_run = theta > 0.0 ? 0 : degenerate_run + 1;
      if (degenerate_run > kDegenerateRunBeforeBland) bland = true;
    }
  }

  TransportSolution Result() const {
    TransportSolution solution;
    solution.plan.assign(static_cast<size_t>(m_) * n_, 0.0);
    for (const BasicCell& cell : basis_) {
      solution.plan[Index(cell.row, cell.col)] = cell.flow;
      solution.cost += cell.flow * Cost(cell.row, cell.col);
    }
    solution.pivots = pivots_;
    return solution;
  }

 private:
  size_t Index(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }
  double Cost(int i, int j) const { return cost_[Index(i, j)]; }

  // Tree nodes: rows are 0..m-1, columns are m..m+n-1.
  int ColNode(int j) const { return m_ + j; }

  void AddBasic(int i, int j, double flow) {
    slot_[Index(i, j)] = static_cast<int>(basis_.size());
    basis_.push_back({i, j, flow});
  }

  // Produces exactly m + n - 1 basic cells, some possibly at zero flow.
  void NorthwestCorner(std::vector<double> supply, std::vector<double> demand) {
    int i = 0;
    int j = 0;
    while (true) {
      const double flow = std::min(supply[i], demand[j]);
      AddBasic(i, j, flow);
      supply[i] -= flow;
      demand[j] -= flow;
      if (i == m_ - 1 && j == n_ - 1) break;
      if (j == n_ - 1 || (i < m_ - 1 && supply[i] <= demand[j])) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  void BuildAdjacency() {
    adjacency_.assign(m_ + n_, {});
    for (size_t e = 0; e < basis_.size(); ++e) {
      adjacency_[basis_[e].row].push_back(static_cast<int>(e));
      adjacency_[ColNode(basis_[e].col)].push_back(static_cast<int>(e));
    }
  }

  int OtherEnd(int edge, int node) const {
    const BasicCell& cell = basis_[edge];
    return node == cell.row ? ColNode(cell.col) : cell.row;
  }

  // Tree search from `root`; parent_edge_[node] is the basis index of the
  // edge toward the root.
  void RootTree(int root) {
    parent_edge_.assign(m_ + n_, -1);
    std::vector<bool> seen(m_ + n_, false);
    std::vector<int> stack = {root};
    seen[root] = true;
    while (!stack.empty()) {
      const int node = stack.back();
      stack.pop_back();
      for (int edge : adjacency_[node]) {
        const int next = OtherEnd(edge, node);
        if (seen[next]) continue;
        seen[next] = true;
        parent_edge_[next] = edge;
        stack.push_back(next);
      }
    }
  }

  void ComputePotentials() {
    BuildAdjacency();
    u_.assign(m_, 0.0);
    v_.assign(n_, 0.0);
    std::vector<bool> seen(m_ + n_, false);
    std::vector<int> stack = {0};
    seen[0] = true;
    while (!stack.empty()) {
      const int node = stack.back();
      stack.pop_back();
      for (int edge : adjacency_[node]) {
        const int next = OtherEnd(edge, node);
        if (seen[next]) continue;
        seen[next] = true;
        const BasicCell& cell = basis_[edge];
        if (next >= m_) {
          v_[cell.col] = Cost(cell.row, cell.col) - u_[cell.row];
        } else {
          u_[cell.row] = Cost(cell.row, cell.col) - v_[cell.col];
        }
        stack.push_back(next);
      }
    }
  }

  // Moves flow around the cycle closed by (enter_row, enter_col) and swaps
  // the leaving cell out of the basis. Returns the flow moved.
  double Pivot(int enter_row, int enter_col, bool bland) {
    RootTree(enter_row);
    std::vector<int> path;
    for (int node = ColNode(enter_col); node != enter_row;) {
      const int edge = parent_edge_[node];
      path.push_back(edge);
      node = OtherEnd(edge, node);
    }
    // Odd positions (0, 2, ...) lose flow, even positions gain.
    int leaving = -1;
    double theta = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < path.size(); k += 2) {
      const BasicCell& cell = basis_[path[k]];
      bool better = cell.flow < theta;
      if (bland && cell.flow == theta && leaving >= 0) {
        const BasicCell& cur = basis_[leaving];
        better = Index(cell.row, cell.col) < Index(cur.row, cur.col);
      }
      if (better) {
        theta = cell.flow;
        leaving = path[k];
      }
    }
    for (size_t k = 0; k < path.size(); ++k) {
      BasicCell& cell = basis_[path[k]];
      cell.flow = (k % 2 == 0) ? cell.flow - theta : cell.flow + theta;
    }
    BasicCell& out = basis_[leaving];
    slot_[Index(out.row, out.col)] = -1;
    out = {enter_row, enter_col, theta};
    slot_[Index(enter_row, enter_col)] = leaving;
    return theta;
  }

  int m_;
  int n_;
  std::span<const double> cost_;
  std::vector<int> slot_;
  std::vector<BasicCell> basis_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> parent_edge_;
  std::vector<double> u_;
  std::vector<double> v_;
  double tolerance_ = 0.0;
  int pivots_ = 0;
};

}  // namespace

absl::StatusOr<TransportSolution> SolveTransport(std::span<const double> supply,
                                                 std::span<const double> demand,
                                                 std::span<const double> cost) {
  if (supply.empty() || demand.empty()) {
    return absl::InvalidArgumentError("transport needs non-empty supply and demand");
  }
  if (cost.size() != supply.size() * demand.size()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "cost matrix has %d entries, expected %d x %d", cost.size(),
        supply.size(), demand.size()));
  }
  double supply_total = 0.0;
  double demand_total = 0.0;
  for (double s : supply) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      return absl::InvalidArgumentError("supplies must be finite and >= 0");
    }
    supply_total += s;
  }
  for (double d : demand) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      return absl::InvalidArgumentError("demands must be finite and >= 0");
    }
    demand_total += d;
  }
  for (double c : cost) {
    if (!std::isfinite(c)) return absl::InvalidArgumentError("costs must be finite");
  }
  if (!(supply_total > 0.0) ||
      std::abs(supply_total - demand_total) > 1e-9 * supply_total) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "unbalanced transport: supply %.17g vs demand %.17g", supply_total,
        demand_total));
  }
  std::vector<double> scaled(demand.begin(), demand.end());
  for (double& d : scaled) d *= supply_total / demand_total;

  TransportTableau tableau(supply, std::move(scaled), cost);
  if (absl::Status s = tableau.Solve(); !s.ok()) return s;
  return tableau.Result();
}

}  // namespace wdp
