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

#ifndef WDP_LINEAR_PROGRAM_H_
#define WDP_LINEAR_PROGRAM_H_

#include <vector>

#include "absl/status/statusor.h"

namespace wdp {

// maximize c'x  subject to  A x <= b,  x >= 0.
struct LinearProgram {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  std::vector<double> c;
};

struct LpSolution {
  double objective = 0.0;
  std::vector<double> x;
};

// Dense two-phase tableau simplex. Pricing is most-negative reduced cost,
// switching to Bland's rule after a run of degenerate pivots. Sized for
// the small potential LPs of the Kantorovich dual (a few thousand rows, tens
// of columns). Returns FailedPrecondition when infeasible and OutOfRange
// when unbounded.
absl::StatusOr<LpSolution> SolveLinearProgram(const LinearProgram& lp);

}  // namespace wdp

#endif  // WDP_LINEAR_PROGRAM_H_
