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

#ifndef WDP_CONVERSIONS_H_
#define WDP_CONVERSIONS_H_

#include "absl/status/statusor.h"
#include "wdp/mechanisms.h"

namespace wdp {

// Declared Lipschitz constant L of the mechanism's log-density. The library
// never estimates it; callers state it as an assumption.
struct LipschitzAssumption {
  double lipschitz = 1.0;

  static absl::StatusOr<LipschitzAssumption> Create(double lipschitz);
};

// epsilon-DP -> (mu, 1/2 * sens * (2 eps (e^eps - 1))^(1/(2 mu)))-WDP.
absl::StatusOr<WdpBudget> DpToWdp(double epsilon, double sensitivity,
                                  double mu);

// (alpha, eps)-RDP -> (mu, 1/2 * sens * (2 eps)^(1/(2 mu)))-WDP. The result
// does not depend on alpha.
absl::StatusOr<WdpBudget> RdpToWdp(const RdpBudget& rdp, double sensitivity,
                                   double mu);

// (mu, eps)-WDP -> (alpha, alpha/(alpha-1) * L * eps^(mu/(mu+1)))-RDP.
absl::StatusOr<RdpBudget> WdpToRdp(const WdpBudget& wdp,
                                   const LipschitzAssumption& lip,
                                   double alpha);

// The alpha -> infinity limit of WdpToRdp: L * eps^(mu/(mu+1)), delta = 0.
absl::StatusOr<DpBudget> WdpToDp(const WdpBudget& wdp,
                                 const LipschitzAssumption& lip);

// zCDP parameter rho = 1/2 (L * eps^(mu/(mu+1)))^2.
absl::StatusOr<double> WdpToZcdp(const WdpBudget& wdp,
                                 const LipschitzAssumption& lip);

// DP -> WDP -> DP. The conversions are one-sided bounds, not inverses, so
// this only reports how much the budget inflates along the loop.
struct RoundTripReport {
  double input_epsilon = 0.0;
  WdpBudget wdp;
  double output_epsilon = 0.0;
  // output / input; 1 when the input is 0.
  double inflation = 1.0;
};

absl::StatusOr<RoundTripReport> DpRoundTrip(double epsilon, double sensitivity,
                                            double mu,
                                            const LipschitzAssumption& lip);

}  // namespace wdp

#endif  // WDP_CONVERSIONS_H_
