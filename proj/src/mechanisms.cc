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

#include "wdp/mechanisms.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace wdp {
namespace {

absl::Status CheckScale(double scale, const char* name) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("%s must be finite and > 0, got %g", name, scale));
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

}  // namespace

absl::StatusOr<MechanismSpec> MechanismSpec::Create(MechanismKind kind,
                                                    double scale,
                                                    double sensitivity) {
  if (absl::Status s = CheckScale(scale, "noise scale"); !s.ok()) return s;
  if (!(sensitivity >= 0.0) || !std::isfinite(sensitivity)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "sensitivity must be finite and >= 0, got %g", sensitivity));
  }
  return MechanismSpec{kind, scale, sensitivity};
}

absl::Status ValidateWdpBudget(const WdpBudget& b) {
  if (absl::Status s = CheckOrder(b.mu); !s.ok()) return s;
  if (!(b.epsilon >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("WDP epsilon must be >= 0, got %g", b.epsilon));
  }
  return absl::OkStatus();
}

absl::Status ValidateRdpBudget(const RdpBudget& b) {
  if (!(b.alpha >= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("RDP order alpha must be >= 1, got %g", b.alpha));
  }
  if (!(b.epsilon >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("RDP epsilon must be >= 0, got %g", b.epsilon));
  }
  return absl::OkStatus();
}

absl::StatusOr<WdpBudget> WdpLaplace(const MechanismSpec& spec, double mu) {
  if (spec.kind != MechanismKind::kLaplace) {
    return absl::InvalidArgumentError("WdpLaplace needs a Laplace mechanism");
  }
  if (absl::Status s = CheckOrder(mu); !s.ok()) return s;
  if (absl::Status s = CheckScale(spec.scale, "Laplace scale"); !s.ok()) return s;
  const double inv = 1.0 / spec.scale;
  // 1/lambda + e^(-1/lambda) - 1 == 1/lambda + expm1(-1/lambda), accurate for
  // large lambda where the bracket is ~ 1/(2 lambda^2).
  const double kl = inv + std::expm1(-inv);
  const double root = std::sqrt(2.0 * kl);
  return WdpBudget{mu, 0.5 * spec.sensitivity * std::pow(root, 1.0 / mu)};
}

absl::StatusOr<WdpBudget> WdpGaussian(const MechanismSpec& spec, double mu) {
  if (spec.kind != MechanismKind::kGaussian) {
    return absl::InvalidArgumentError("WdpGaussian needs a Gaussian mechanism");
  }
  if (absl::Status s = CheckOrder(mu); !s.ok()) return s;
  if (absl::Status s = CheckScale(spec.scale, "Gaussian scale"); !s.ok()) return s;
  // Sensitivity sits inside the 1/mu root, so the budget scales as
  // sensitivity^(1/mu), not linearly.
  return WdpBudget{mu, 0.5 * std::pow(spec.sensitivity / spec.scale, 1.0 / mu)};
}

absl::StatusOr<WdpBudget> WdpForMechanism(const MechanismSpec& spec,
                                          double mu) {
  switch (spec.kind) {
    case MechanismKind::kLaplace:
      return WdpLaplace(spec, mu);
    case MechanismKind::kGaussian:
      return WdpGaussian(spec, mu);
  }
  return absl::InvalidArgumentError("unknown mechanism kind");
}

absl::StatusOr<RdpBudget> RdpGaussian(double sigma, double alpha) {
  if (absl::Status s = CheckScale(sigma, "Gaussian scale"); !s.ok()) return s;
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("Gaussian RDP order alpha must be > 1, got %g", alpha));
  }
  return RdpBudget{alpha, alpha / (2.0 * sigma * sigma)};
}

absl::StatusOr<RdpBudget> RdpLaplace(double lambda, double alpha) {
  if (absl::Status s = CheckScale(lambda, "Laplace scale"); !s.ok()) return s;
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("Laplace RDP order alpha must be >= 1, got %g", alpha));
  }
  const double inv = 1.0 / lambda;
  if (std::abs(alpha - 1.0) < kRdpUnitOrderTolerance) {
    return RdpBudget{alpha, inv + std::expm1(-inv)};
  }
  // Factor e^((alpha-1)/lambda) out of the bracket:
  //   log[...] = (alpha-1)/lambda
  //              + log1p((alpha-1)/(2alpha-1) * expm1(-(2alpha-1)/lambda)).
  const double am1 = alpha - 1.0;
  const double tam1 = 2.0 * alpha - 1.0;
  const double log_bracket =
      am1 * inv + std::log1p(am1 / tam1 * std::expm1(-tam1 * inv));
  return RdpBudget{alpha, log_bracket / am1};
}

absl::StatusOr<DpBudget> DpLaplace(double lambda) {
  if (absl::Status s = CheckScale(lambda, "Laplace scale"); !s.ok()) return s;
  return DpBudget{1.0 / lambda, 0.0};
}

absl::StatusOr<DpBudget> DpGaussian(double sigma) {
  if (absl::Status s = CheckScale(sigma, "Gaussian scale"); !s.ok()) return s;
  return DpBudget{std::numeric_limits<double>::infinity(), 0.0};
}

absl::StatusOr<double> AttackSuccessProbability(double epsilon) {
  if (!(epsilon >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("epsilon must be >= 0, got %g", epsilon));
  }
  return 1.0 / (1.0 + std::exp(-epsilon));
}

}  // namespace wdp
