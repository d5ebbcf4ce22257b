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

#ifndef WDP_MECHANISMS_H_
#define WDP_MECHANISMS_H_

#include <limits>

#include "absl/status/statusor.h"

namespace wdp {

enum class MechanismKind { kLaplace, kGaussian };

// A noise mechanism: Laplace scale lambda or Gaussian scale sigma, plus the
// caller-supplied l_p sensitivity of the underlying query.
struct MechanismSpec {
  MechanismKind kind = MechanismKind::kGaussian;
  double scale = 1.0;
  double sensitivity = 1.0;

  static absl::StatusOr<MechanismSpec> Create(MechanismKind kind, double scale,
                                              double sensitivity);
};

// (mu, epsilon)-WDP guarantee.
struct WdpBudget {
  double mu = 1.0;
  double epsilon = 0.0;
};

// (alpha, epsilon)-RDP guarantee.
struct RdpBudget {
  double alpha = 1.0;
  double epsilon = 0.0;
};

// (epsilon, delta)-DP guarantee. epsilon may be +infinity for mechanisms
// with no finite pure-DP budget.
struct DpBudget {
  double epsilon = 0.0;
  double delta = 0.0;

  bool unbounded() const { return epsilon == std::numeric_limits<double>::infinity(); }
};

// Orders within this distance of 1 use the alpha = 1 (KL) branch of the
// Laplace RDP formula.
inline constexpr double kRdpUnitOrderTolerance = 1e-9;

absl::Status ValidateWdpBudget(const WdpBudget& b);
absl::Status ValidateRdpBudget(const RdpBudget& b);

// 1/2 * sensitivity * (sqrt(2 [1/lambda + exp(-1/lambda) - 1]))^(1/mu).
absl::StatusOr<WdpBudget> WdpLaplace(const MechanismSpec& spec, double mu);

// 1/2 * (sensitivity / sigma)^(1/mu).
absl::StatusOr<WdpBudget> WdpGaussian(const MechanismSpec& spec, double mu);

// Dispatches on spec.kind.
absl::StatusOr<WdpBudget> WdpForMechanism(const MechanismSpec& spec, double mu);

// alpha / (2 sigma^2), unit sensitivity. Requires alpha > 1.
absl::StatusOr<RdpBudget> RdpGaussian(double sigma, double alpha);

// Unit-sensitivity Laplace RDP curve. alpha = 1 gives the KL divergence
// 1/lambda + exp(-1/lambda) - 1; alpha > 1 gives
//   1/(alpha-1) log[alpha/(2alpha-1) e^((alpha-1)/lambda)
//                   + (alpha-1)/(2alpha-1) e^(-alpha/lambda)].
absl::StatusOr<RdpBudget> RdpLaplace(double lambda, double alpha);

// epsilon = 1/lambda, delta = 0.
absl::StatusOr<DpBudget> DpLaplace(double lambda);

// The Gaussian mechanism has no finite pure-DP budget; returns epsilon = inf.
absl::StatusOr<DpBudget> DpGaussian(double sigma);

// Membership-attack success probability 1 / (1 + e^-epsilon).
absl::StatusOr<double> AttackSuccessProbability(double epsilon);

}  // namespace wdp

#endif  // WDP_MECHANISMS_H_
