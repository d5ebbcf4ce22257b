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

#ifndef WDP_EMPIRICAL_OT_H_
#define WDP_EMPIRICAL_OT_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "wdp/mechanisms.h"

namespace wdp {

// Largest support the exact solvers accept per distribution.
inline constexpr size_t kMaxSupportAtoms = 64;

// Finite-support distribution on the real line. Atoms are kept sorted with
// duplicates merged; zero-weight atoms are kept.
class DiscreteDist {
 public:
  // Weights must be >= 0 and sum to 1 within 1e-12.
  static absl::StatusOr<DiscreteDist> Create(std::vector<double> atoms,
                                             std::vector<double> weights);
  static DiscreteDist PointMass(double atom);

  // JSON array of [atom, weight] pairs.
  static absl::StatusOr<DiscreteDist> FromJson(std::string_view text);
  std::string ToJson() const;

  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  size_t size() const { return atoms_.size(); }

 private:
  DiscreteDist(std::vector<double> atoms, std::vector<double> weights)
      : atoms_(std::move(atoms)), weights_(std::move(weights)) {}

  std::vector<double> atoms_;
  std::vector<double> weights_;
};

enum class OtMethod {
  kQuantile,        // monotone (quantile) coupling, exact in 1-D
  kNetworkSimplex,  // exact transport LP
};

// mu-Wasserstein distance between two equal-size samples via order
// statistics: ((1/n) sum |x_(i) - y_(i)|^mu)^(1/mu).
absl::StatusOr<double> Wasserstein1dSamples(std::span<const double> x,
                                            std::span<const double> y,
                                            double mu);

// Optimal transport cost sum_ij pi_ij |x_i - y_j|^mu (not yet raised to
// 1/mu).
absl::StatusOr<double> TransportCost(const DiscreteDist& p,
                                     const DiscreteDist& q, double mu,
                                     OtMethod method);

// Exact mu-Wasserstein distance, TransportCost^(1/mu).
absl::StatusOr<double> WassersteinDiscrete(
    const DiscreteDist& p, const DiscreteDist& q, double mu,
    OtMethod method = OtMethod::kQuantile);

// 1-Wasserstein distance from the Kantorovich-Rubinstein side:
//   max sum_i phi(z_i) (p(z_i) - q(z_i))
//   s.t. |phi(z_i) - phi(z_j)| <= |z_i - z_j| for every pair of merged atoms,
// solved as a linear program over the potential values.
absl::StatusOr<double> KantorovichDual1d(const DiscreteDist& p,
                                         const DiscreteDist& q);

struct PushforwardReport {
  double before = 0.0;
  double after = 0.0;
  bool non_expansive = true;
};

// W_mu(p, q) against W_mu(f#p, f#q). For a 1-Lipschitz f, after <= before.
absl::StatusOr<PushforwardReport> PushforwardCheck(
    const DiscreteDist& p, const DiscreteDist& q,
    const std::function<double(double)>& map, double mu);

// Side-by-side empirical Wasserstein distance between a mechanism's output
// on adjacent inputs (noise centered at 0 and at `sensitivity`) and the
// closed-form WDP budget for the same mechanism.
struct MechanismAuditReport {
  double empirical = 0.0;
  double closed_form = 0.0;
  size_t samples = 0;
  bool empirical_exceeds_closed_form = false;
};

absl::StatusOr<MechanismAuditReport> MechanismAudit(const MechanismSpec& spec,
                                                    double mu, size_t samples,
                                                    uint64_t seed);

}  // namespace wdp

#endif  // WDP_EMPIRICAL_OT_H_
