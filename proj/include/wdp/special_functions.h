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

#ifndef WDP_SPECIAL_FUNCTIONS_H_
#define WDP_SPECIAL_FUNCTIONS_H_

#include "absl/status/statusor.h"

namespace wdp {

// Parameters of the raw absolute moment E|Z|^mu for Z ~ Normal(mean,
// variance). In accountant use mean = q * d and variance = (2 - 2q + 2q^2)
// sigma^2.
struct MomentParams {
  double mu = 1.0;
  double mean = 0.0;
  double variance = 1.0;
};

// Gamma function for x > 0 (Lanczos approximation, reflection below 1/2).
// Relative error is below 1e-12 on (0, 50].
absl::StatusOr<double> Gamma(double x);

// Series controls for Kummer1F1.
inline constexpr double kKummerTolerance = 1e-14;
inline constexpr int kKummerMaxTerms = 500;
inline constexpr double kKummerAsymptoticThreshold = 40.0;

// Kummer's confluent hypergeometric function 1F1(a; b; z), summed as
//   sum_n (a)^(n) / (b)^(n) * z^n / n!
// with rising factorials. When a is a non-positive integer the series is a
// polynomial and is summed exactly. For z < 0 and non-terminating a the
// all-positive form exp(z) * 1F1(b - a; b; -z) is summed instead, which
// keeps full precision for moderate |z|. Beyond kKummerAsymptoticThreshold
// the large-argument expansion in 1/|z| is used when it converges.
//
// Returns InvalidArgument if b is a non-positive integer or z is not
// finite, and Internal if kKummerMaxTerms terms do not reach
// kKummerTolerance relative to the partial sum.
absl::StatusOr<double> Kummer1F1(double a, double b, double z);

// E|Z|^mu for Z ~ Normal(p.mean, p.variance):
//   (2 var)^(mu/2) * Gamma((mu + 1)/2) / sqrt(pi)
//     * 1F1(-mu/2; 1/2; -mean^2 / (2 var)).
absl::StatusOr<double> AbsMoment(const MomentParams& p);

}  // namespace wdp

#endif  // WDP_SPECIAL_FUNCTIONS_H_
