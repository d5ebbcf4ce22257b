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

#include "wdp/special_functions.h"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace wdp {
namespace {

// Godfrey's coefficients for g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoefficients = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double LanczosGamma(double x) {
  // Evaluates Gamma(x) for x >= 1/2.
  const double xm1 = x - 1.0;
  double series = kLanczosCoefficients[0];
  for (size_t i = 1; i < kLanczosCoefficients.size(); ++i) {
    series += kLanczosCoefficients[i] / (xm1 + static_cast<double>(i));
  }
  const double t = xm1 + kLanczosG + 0.5;
  // Split the power so t^(x - 1/2) does not overflow before exp(-t) applies.
  const double half_power = std::pow(t, 0.5 * (xm1 + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_power *
         (half_power * std::exp(-t)) * series;
}

bool IsNonPositiveInteger(double v) {
  return v <= 0.0 && v == std::nearbyint(v);
}

absl::StatusOr<double> SumSeries(double a, double b, double z) {
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < kKummerMaxTerms; ++n) {
    term *= (a + n) / (b + n) * z / (n + 1);
    sum += term;
    if (std::abs(term) < kKummerTolerance * std::abs(sum)) return sum;
  }
  return absl::InternalError(absl::StrFormat(
      "1F1(%g; %g; %g) did not converge within %d terms", a, b, z,
      kKummerMaxTerms));
}

double SumPolynomial(double a, double b, double z) {
  // a = -m for a non-negative integer m: exactly m + 1 non-zero terms.
  const int m = static_cast<int>(-a);
  double term = 1.0;
  double sum = 1.0;
  for (int n = 0; n < m; ++n) {
    term *= (a + n) / (b + n) * z / (n + 1);
    sum += term;
  }
  return sum;
}

// Large negative z: Gamma(b) / Gamma(b - a) * (-z)^(-a)
//   * sum_k (a)^(k) (a - b + 1)^(k) / k! * (-z)^(-k).
// Returns nullopt when the expansion is not usable at this z.
std::optional<double> SumAsymptotic(double a, double b, double z) {
  const double x = -z;
  if (x < kKummerAsymptoticThreshold || !(b > 0.0) || !(b - a > 0.0)) {
    return std::nullopt;
  }
  // Size of the dropped exp(z) branch relative to the leading term.
  if (z + (2.0 * a - b) * std::log(x) > std::log(kKummerTolerance)) {
    return std::nullopt;
  }
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < kKummerMaxTerms; ++k) {
    const double next = term * (a + k) * (a - b + 1.0 + k) / ((k + 1) * x);
    if (std::abs(next) > std::abs(term)) return std::nullopt;
    term = next;
    sum += term;
    if (std::abs(term) < kKummerTolerance * std::abs(sum)) {
      return std::exp(std::lgamma(b) - std::lgamma(b - a) - a * std::log(x)) *
             sum;
    }
  }
  return std::nullopt;
}

}  // namespace

absl::StatusOr<double> Gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("Gamma requires a finite x > 0, got %g", x));
  }
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
    return std::numbers::pi /
           (std::sin(std::numbers::pi * x) * LanczosGamma(1.0 - x));
  }
  return LanczosGamma(x);
}

absl::StatusOr<double> Kummer1F1(double a, double b, double z) {
  if (IsNonPositiveInteger(b)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("1F1 requires b not a non-positive integer, got %g", b));
  }
  if (!std::isfinite(a) || !std::isfinite(z)) {
    return absl::InvalidArgumentError("1F1 requires finite a and z");
  }
  if (z == 0.0) return 1.0;
  if (IsNonPositiveInteger(a)) return SumPolynomial(a, b, z);
  if (z < 0.0) {
    if (IsNonPositiveInteger(b - a)) return std::exp(z) * SumPolynomial(b - a, b, -z);
    if (std::optional<double> asymptotic = SumAsymptotic(a, b, z)) {
      return *asymptotic;
    }
    absl::StatusOr<double> transformed = SumSeries(b - a, b, -z);
    if (!transformed.ok()) return transformed.status();
    return std::exp(z) * *transformed;
  }
  return SumSeries(a, b, z);
}

absl::StatusOr<double> AbsMoment(const MomentParams& p) {
  if (!(p.variance > 0.0) || !std::isfinite(p.variance)) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "moment variance must be finite and > 0, got %g", p.variance));
  }
  if (!(p.mu >= 1.0) || !std::isfinite(p.mu)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("moment order must be >= 1, got %g", p.mu));
  }
  if (!std::isfinite(p.mean)) {
    return absl::InvalidArgumentError("moment mean must be finite");
  }
  absl::StatusOr<double> gamma = Gamma(0.5 * (p.mu + 1.0));
  if (!gamma.ok()) return gamma.status();
  const double z = -p.mean * p.mean / (2.0 * p.variance);
  absl::StatusOr<double> kummer = Kummer1F1(-0.5 * p.mu, 0.5, z);
  if (!kummer.ok()) return kummer.status();
  return std::pow(2.0 * p.variance, 0.5 * p.mu) * *gamma /
         std::sqrt(std::numbers::pi) * *kummer;
}

}  // namespace wdp
