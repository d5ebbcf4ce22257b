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

#include "wdp/simulation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "json.hpp"
#include "wdp/counter_rng.h"
#include "wdp/format.h"
#include "wdp/mechanisms.h"

namespace wdp {
namespace {

// Stream tags keep gradient draws and pair sampling independent.
constexpr uint64_t kGradientStream = 0x6772616400000000ULL;
constexpr uint64_t kPairStream = 0x7061697200000000ULL;

double Clip(double g, double c) { return std::copysign(std::min(std::abs(g), c), g); }

}  // namespace

absl::StatusOr<GradientTrace> GenerateTrace(uint64_t seed, size_t steps,
                                            size_t per_step, double shape,
                                            double scale) {
  if (steps < 1) return absl::InvalidArgumentError("trace needs at least 1 step");
  if (per_step < 2) {
    return absl::InvalidArgumentError("trace needs at least 2 examples per step");
  }
  if (!(shape > 0.0) || !(scale > 0.0) || !std::isfinite(shape) ||
      !std::isfinite(scale)) {
    return absl::InvalidArgumentError("Weibull shape and scale must be > 0");
  }
  GradientTrace trace;
  trace.seed = seed;
  trace.shape = shape;
  trace.scale = scale;
  trace.steps.resize(steps);
  for (size_t t = 0; t < steps; ++t) {
    CounterRng rng(seed, kGradientStream + t);
    trace.steps[t].resize(per_step);
    for (double& g : trace.steps[t]) g = rng.NextWeibull(shape, scale);
  }
  return trace;
}

absl::StatusOr<double> ClipThreshold(const GradientTrace& trace, double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("clip quantile must lie in (0, 1], got %g", p));
  }
  std::vector<double> pooled;
  for (const std::vector<double>& step : trace.steps) {
    for (double g : step) pooled.push_back(std::abs(g));
  }
  if (pooled.empty()) return absl::InvalidArgumentError("trace has no gradients");
  const auto rank = static_cast<size_t>(std::ceil(p * static_cast<double>(pooled.size())));
  const size_t index = std::min(std::max<size_t>(rank, 1), pooled.size()) - 1;
  std::nth_element(pooled.begin(), pooled.begin() + index, pooled.end());
  return pooled[index];
}

std::vector<double> DefaultRdpOrders() {
  std::vector<double> orders = {1.5};
  for (int a = 2; a <= 64; ++a) orders.push_back(a);
  return orders;
}

double RdpBaselineEpsilon(size_t steps, double sigma, double delta,
                          const std::vector<double>& orders) {
  double best = std::numeric_limits<double>::infinity();
  for (double alpha : orders) {
    absl::StatusOr<RdpBudget> per_step = RdpGaussian(sigma, alpha);
    if (!per_step.ok()) continue;
    const double eps = static_cast<double>(steps) * per_step->epsilon +
                       std::log(1.0 / delta) / (alpha - 1.0);
    best = std::min(best, eps);
  }
  return best;
}

absl::StatusOr<CompositionCurve> RunComposition(const GradientTrace& trace,
                                                const SimulationConfig& cfg,
                                                bool clip) {
  if (absl::Status s = cfg.accountant.Validate(); !s.ok()) return s;
  if (trace.steps.empty()) return absl::InvalidArgumentError("empty trace");
  if (cfg.rdp_orders.empty()) {
    return absl::InvalidArgumentError("RDP baseline needs at least one order");
  }

  CompositionCurve curve;
  curve.seed = trace.seed;
  curve.sigma = cfg.accountant.sigma;
  curve.effective_sigma = cfg.accountant.sigma;
  curve.policy = cfg.policy.ToString();
  curve.q = cfg.accountant.q;
  curve.mu = cfg.accountant.mu;
  curve.beta = cfg.accountant.beta;
  curve.delta = cfg.accountant.delta;
  curve.clip_quantile = cfg.clip_quantile;

  double threshold = std::numeric_limits<double>::infinity();
  if (clip) {
    if (!cfg.clip_quantile.has_value()) {
      return absl::InvalidArgumentError("clipping requires a clip quantile");
    }
    absl::StatusOr<double> c = ClipThreshold(trace, *cfg.clip_quantile);
    if (!c.ok()) return c.status();
    if (!(*c > 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrFormat("clip threshold must be > 0, got %g", *c));
    }
    threshold = *c;
    curve.clip_threshold = threshold;
    curve.effective_sigma = threshold * cfg.accountant.sigma;
  }

  AccountantConfig step_cfg = cfg.accountant;
  step_cfg.sigma = curve.effective_sigma;
  const size_t steps = trace.steps.size();
  curve.pair_distance.assign(steps, 0.0);
  curve.step_loss.assign(steps, 0.0);
  std::vector<absl::Status> status(steps);

  auto evaluate = [&](size_t t) {
    const std::vector<double>& raw = trace.steps[t];
    std::vector<double> grads(raw.begin(), raw.end());
    if (clip) {
      for (double& g : grads) g = Clip(g, threshold);
    }
    const size_t pairs = cfg.sample_pairs > 0 ? cfg.sample_pairs : 10 * grads.size();
    CounterRng rng(trace.seed, kPairStream + t);
    absl::StatusOr<PairDistanceEstimate> d =
        EstimatePairDistance(grads, 1, cfg.policy, pairs, rng);
    if (!d.ok()) {
      status[t] = d.status();
      return;
    }
    absl::StatusOr<double> loss = StepLoss(step_cfg, *d);
    if (!loss.ok()) {
      status[t] = loss.status();
      return;
    }
    curve.pair_distance[t] = d->d;
    curve.step_loss[t] = *loss;
  };

  const size_t workers =
      std::clamp<size_t>(static_cast<size_t>(std::max(cfg.threads, 1)), 1, steps);
  if (workers == 1) {
    for (size_t t = 0; t < steps; ++t) evaluate(t);
  } else {
    std::vector<std::jthread> pool;
    for (size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (size_t t = w; t < steps; t += workers) evaluate(t);
      });
    }
  }
  for (const absl::Status& s : status) {
    if (!s.ok()) return s;
  }
  curve.sample_pairs = cfg.sample_pairs > 0 ? cfg.sample_pairs
                                            : 10 * trace.steps.front().size();

  AccountantState state;
  for (size_t t = 0; t <= steps; ++t) {
    if (t > 0) {
      absl::StatusOr<AccountantState> next = Accumulate(std::move(state), curve.step_loss[t - 1]);
      if (!next.ok()) return next.status();
      state = *std::move(next);
    }
    absl::StatusOr<WdpBudget> eps = EpsilonGivenDelta(state, step_cfg);
    if (!eps.ok()) return eps.status();
    curve.epsilon_wdp.push_back(eps->epsilon);
    curve.epsilon_rdp_baseline.push_back(RdpBaselineEpsilon(
        t, curve.effective_sigma, cfg.accountant.delta, cfg.rdp_orders));
  }
  return curve;
}

std::string CompositionCurve::ToCsv() const {
  std::string out = "step,epsilon_wdp,epsilon_rdp_baseline\n";
  for (size_t t = 0; t < epsilon_wdp.size(); ++t) {
    absl::StrAppendFormat(&out, "%d,%s,%s\n", t, FormatSignificant(epsilon_wdp[t]),
                          FormatSignificant(epsilon_rdp_baseline[t]));
  }
  return out;
}

std::string CompositionCurve::MetadataJson() const {
  nlohmann::ordered_json doc;
  doc["seed"] = seed;
  doc["steps"] = step_loss.size();
  doc["sigma"] = RoundToSignificant(sigma);
  doc["effective_sigma"] = RoundToSignificant(effective_sigma);
  doc["clip_quantile"] = clip_quantile.has_value()
                             ? nlohmann::ordered_json(RoundToSignificant(*clip_quantile))
                             : nlohmann::ordered_json(nullptr);
  doc["clip_threshold"] = clip_threshold.has_value()
                              ? nlohmann::ordered_json(RoundToSignificant(*clip_threshold))
                              : nlohmann::ordered_json(nullptr);
  doc["policy"] = policy;
  doc["sample_pairs"] = sample_pairs;
  doc["q"] = RoundToSignificant(q);
  doc["mu"] = RoundToSignificant(mu);
  doc["beta"] = RoundToSignificant(beta);
  doc["delta"] = RoundToSignificant(delta);
  return doc.dump(2);
}

}  // namespace wdp
