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

#ifndef WDP_TRANSPORT_SIMPLEX_H_
#define WDP_TRANSPORT_SIMPLEX_H_

#include <cstddef>
#include <span>
#include <vector>

#include "absl/status/statusor.h"

namespace wdp {

struct TransportSolution {
  double cost = 0.0;
  // Row-major supply x demand flow matrix.
  std::vector<double> plan;
  int pivots = 0;
};

// Exact minimum-cost transport between `supply` (m sources) and `demand`
// (n sinks) with row-major cost matrix `cost` (m x n), solved by the
// network simplex method on the bipartite transport graph. The basis is a
// spanning tree of m + n - 1 cells; potentials come from the tree and the
// entering cell is the most negative reduced cost (Bland's rule after a run
// of degenerate pivots).
//
// Totals of supply and demand must agree to 1e-9 relative; demand is
// rescaled onto the supply total before solving.
absl::StatusOr<TransportSolution> SolveTransport(std::span<const double> supply,
                                                 std::span<const double> demand,
                                                 std::span<const double> cost);

}  // namespace wdp

#endif  // WDP_TRANSPORT_SIMPLEX_H_
