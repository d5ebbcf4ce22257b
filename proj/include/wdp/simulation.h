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

#ifndef WDP_SIMULATION_H_
#define WDP_SIMULATION_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "wdp/accountant.h"

namespace wdp {

// Synthetic per-example scalar gradients, one list per step.
struct GradientTrace {
  std::vector<std::vector<double>> steps;
  uint64_t seed = 0;
  double shape = 0.5;
  double scale = 1.0;
};

// T steps of n i.i.d. Weibull(shape, scale) draws. Step t uses its own
// counter stream, so the trace depends only on (seed, t, n, shape, scale).
absl::StatusOr<GradientTrace> GenerateTrace(uint64_t seed, size_t steps,
                                            size_t per_step, double shape,
                                            double scale = 1.0);

// Nearest-rank p-quantile of |g| pooled over every step.
absl::StatusOr<double> ClipThreshold(const GradientTrace& trace, double p);

// Renyi orders scanned by the RDP baseline: 1.5 and the integers 2..64.
std::vector<double> DefaultRdpOrders();

struct SimulationConfig {
  AccountantConfig accountant;
  PairDistancePolicy policy = PairDistancePolicy::Min();
  // Sampled pairs per step; 0 means 10 x examples-per-step.
  size_t sample_pairs = 0;
  // Quantile level for the clipping threshold C.
  std::optional<double> clip_quantile;
  std::vector<double> rdp_orders = DefaultRdpOrders();
  // Worker threads for per-step evaluation; results are order-independent.
  int threads = 1;
};

// Cumulative budgets after each prefix of steps. Index 0 is the empty
// prefix, so each curve has T + 1 entries.
struct CompositionCurve {
  std::vector<double> epsilon_wdp;
  std::vector<double> epsilon_rdp_baseline;
  std::vector<double> pair_distance;  // d_t per step (T entries)
  std::vector<double> step_loss;      // WDP loss per step (T entries)

  // Resolved metadata.
  uint64_t seed = 0;
  double sigma = 0.0;
  double effective_sigma = 0.0;
  std::optional<double> clip_threshold;
  std::optional<double> clip_quantile;
  std::string policy;
  size_t sample_pairs = 0;
  double q = 0.0;
  double mu = 1.0;
  double beta = 1.0;
  double delta = 0.0;

  // step,epsilon_wdp,epsilon_rdp_baseline with 10 significant digits.
  std::string ToCsv() const;
  // Full configuration sidecar as a JSON object.
  std::string MetadataJson() const;
};

// Runs the Wasserstein accountant and the RDP baseline over a trace. With
// `clip`, gradients are clipped to C (from cfg.clip_quantile) and the noise
// scale entering both accountants is C * sigma.
absl::StatusOr<CompositionCurve> RunComposition(const GradientTrace& trace,
                                                const SimulationConfig& cfg,
                                                bool clip);

// RDP baseline after `steps` compositions of a unit-sensitivity Gaussian
// mechanism with noise `sigma`: min over orders of
//   steps * alpha / (2 sigma^2) + log(1/delta) / (alpha - 1).
double RdpBaselineEpsilon(size_t steps, double sigma, double delta,
                          const std::vector<double>& orders);

}  // namespace wdp

#endif  // WDP_SIMULATION_H_
