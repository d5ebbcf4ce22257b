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

#include "wdp/conversions.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace wdp {
namespace {

absl::Status CheckNonNegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s must be finite and >= 0, got %g", name, v));
  }
  return absl::OkStatus();
}

absl::Status CheckOrder(double mu) {
  if (!(mu >= 1.0) || !std::isfinite(mu)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("WDP order mu must be >= 1, got %g", mu));
  }
  return absl::OkStatus();
}

// L * eps^(mu/(mu+1)), shared by the WDP -> RDP/DP/zCDP family.
double LipschitzTerm(const WdpBudget& wdp, const LipschitzAssumption& lip) {
  return lip.lipschitz * std::pow(wdp.epsilon, wdp.mu / (wdp.mu + 1.0));
}

}  // namespace

absl::StatusOr<LipschitzAssumption> LipschitzAssumption::Create(
    double lipschitz) {
  if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "Lipschitz constant must be finite and > 0, got %g", lipschitz));
  }
  return LipschitzAssumption{lipschitz};
}

absl::StatusOr<WdpBudget> DpToWdp(double epsilon, double sensitivity,
                                  double mu) {
  if (absl::Status s = CheckNonNegative(epsilon, "DP epsilon"); !s.ok()) return s;
  if (absl::Status s = CheckNonNegative(sensitivity, "sensitivity"); !s.ok()) return s;
  if (absl::Status s = CheckOrder(mu); !s.ok()) return s;
  const double inner = 2.0 * epsilon * std::expm1(epsilon);
  return WdpBudget{mu, 0.5 * sensitivity * std::pow(inner, 1.0 / (2.0 * mu))};
}

absl::StatusOr<WdpBudget> RdpToWdp(const RdpBudget& rdp, double sensitivity,
                                   double mu) {
  if (absl::Status s = ValidateRdpBudget(rdp); !s.ok()) return s;
  if (absl::Status s = CheckNonNegative(sensitivity, "sensitivity"); !s.ok()) return s;
  if (absl::Status s = CheckOrder(mu); !s.ok()) return s;
  return WdpBudget{
      mu, 0.5 * sensitivity * std::pow(2.0 * rdp.epsilon, 1.0 / (2.0 * mu))};
}

absl::StatusOr<RdpBudget> WdpToRdp(const WdpBudget& wdp,
                                   const LipschitzAssumption& lip,
                                   double alpha) {
  if (absl::Status s = ValidateWdpBudget(wdp); !s.ok()) return s;
  if (!(alpha > 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("RDP order alpha must be > 1, got %g", alpha));
  }
  if (std::isinf(alpha)) return RdpBudget{alpha, LipschitzTerm(wdp, lip)};
  return RdpBudget{alpha, alpha / (alpha - 1.0) * LipschitzTerm(wdp, lip)};
}

absl::StatusOr<DpBudget> WdpToDp(const WdpBudget& wdp,
                                 const LipschitzAssumption& lip) {
  if (absl::Status s = ValidateWdpBudget(wdp); !s.ok()) return s;
  return DpBudget{LipschitzTerm(wdp, lip), 0.0};
}

absl::StatusOr<double> WdpToZcdp(const WdpBudget& wdp,
                                 const LipschitzAssumption& lip) {
  if (absl::Status s = ValidateWdpBudget(wdp); !s.ok()) return s;
  const double term = LipschitzTerm(wdp, lip);
  return 0.5 * term * term;
}

absl::StatusOr<RoundTripReport> DpRoundTrip(double epsilon, double sensitivity,
                                            double mu,
                                            const LipschitzAssumption& lip) {
  absl::StatusOr<WdpBudget> wdp = DpToWdp(epsilon, sensitivity, mu);
  if (!wdp.ok()) return wdp.status();
  absl::StatusOr<DpBudget> back = WdpToDp(*wdp, lip);
  if (!back.ok()) return back.status();
  RoundTripReport report;
  report.input_epsilon = epsilon;
  report.wdp = *wdp;
  report.output_epsilon = back->epsilon;
  report.inflation = epsilon > 0.0 ? back->epsilon / epsilon : 1.0;
  return report;
}

}  // namespace wdp
