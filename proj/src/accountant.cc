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

#include "wdp/accountant.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_format.h"
#include "absl/strings/strip.h"
#include "json.hpp"
#include "wdp/special_functions.h"

namespace wdp {
namespace {

bool InOpenUnit(double v) { return v > 0.0 && v < 1.0; }

absl::Status CheckDeltaAndBeta(const AccountantConfig& cfg) {
  if (!InOpenUnit(cfg.delta)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("delta must lie in (0, 1), got %g", cfg.delta));
  }
  if (!(cfg.beta > 0.0) || !std::isfinite(cfg.beta)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("beta must be finite and > 0, got %g", cfg.beta));
  }
  return absl::OkStatus();
}

// Nearest-rank quantile of an unsorted, non-empty list.
double NearestRank(std::vector<double>& values, double p) {
  const auto rank = static_cast<size_t>(
      std::ceil(p * static_cast<double>(values.size())));
  const size_t index = rank == 0 ? 0 : std::min(rank, values.size()) - 1;
  std::nth_element(values.begin(), values.begin() + index, values.end());
  return values[index];
}

}  // namespace

absl::Status AccountantConfig::Validate() const {
  if (!(q >= 0.0 && q <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("subsampling probability q must lie in [0, 1], got %g", q));
  }
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("sigma must be finite and > 0, got %g", sigma));
  }
  if (!(mu >= 1.0) || !std::isfinite(mu)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("WDP order mu must be >= 1, got %g", mu));
  }
  if (grad_dim < 1) {
    return absl::InvalidArgumentError(
        absl::StrFormat("gradient dimension must be >= 1, got %d", grad_dim));
  }
  return CheckDeltaAndBeta(*this);
}

double AccountantConfig::NoiseVariance() const {
  return (2.0 - 2.0 * q + 2.0 * q * q) * sigma * sigma;
}

double AccountantState::total() const {
  double sum = 0.0;
  for (double loss : losses) sum += loss;
  return sum;
}

absl::StatusOr<PairDistancePolicy> PairDistancePolicy::Parse(
    std::string_view text) {
  if (text == "min") return Min();
  if (text == "max") return Max();
  double value = 0.0;
  absl::string_view rest(text.data(), text.size());
  if (absl::ConsumePrefix(&rest, "quantile:")) {
    if (!absl::SimpleAtod(rest, &value) || !(value > 0.0 && value <= 1.0)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "quantile policy needs a level in (0, 1], got '%s'", std::string(rest)));
    }
    return Quantile(value);
  }
  if (absl::ConsumePrefix(&rest, "fixed:")) {
    if (!absl::SimpleAtod(rest, &value) || !(value >= 0.0) ||
        !std::isfinite(value)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "fixed policy needs a finite distance >= 0, got '%s'", std::string(rest)));
    }
    return Fixed(value);
  }
  return absl::InvalidArgumentError(absl::StrFormat(
      "unknown pair-distance policy '%s' (min|max|quantile:p|fixed:d)",
      std::string(text)));
}

std::string PairDistancePolicy::ToString() const {
  switch (kind) {
    case Kind::kMin:
      return "min";
    case Kind::kMax:
      return "max";
    case Kind::kQuantile:
      return absl::StrFormat("quantile:%g", value);
    case Kind::kFixed:
      return absl::StrFormat("fixed:%g", value);
  }
  return "unknown";
}

std::vector<std::pair<size_t, size_t>> SamplePairs(size_t n, size_t count,
                                                   CounterRng& rng) {
  std::vector<std::pair<size_t, size_t>> pairs;
  if (n < 2) return pairs;
  const size_t all = n * (n - 1) / 2;
  if (count == 0 || count >= all) {
    pairs.reserve(all);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    return pairs;
  }
  pairs.reserve(count);
  while (pairs.size() < count) {
    size_t i = rng.NextBelow(n);
    size_t j = rng.NextBelow(n - 1);
    if (j >= i) ++j;
    if (i > j) std::swap(i, j);
    pairs.emplace_back(i, j);
  }
  return pairs;
}

absl::StatusOr<PairDistanceEstimate> EstimatePairDistance(
    std::span<const double> gradients, size_t dim,
    const PairDistancePolicy& policy, size_t sample_pairs, CounterRng& rng) {
  using Kind = PairDistancePolicy::Kind;
  if (policy.kind == Kind::kFixed) {
    if (!(policy.value >= 0.0) || !std::isfinite(policy.value)) {
      return absl::InvalidArgumentError("fixed pair distance must be >= 0");
    }
    return PairDistanceEstimate{policy.value, 0};
  }
  if (policy.kind == Kind::kQuantile &&
      !(policy.value > 0.0 && policy.value <= 1.0)) {
    return absl::InvalidArgumentError("quantile level must lie in (0, 1]");
  }
  if (dim == 0 || gradients.size() % dim != 0) {
    return absl::InvalidArgumentError(
        "gradient buffer size must be a multiple of a non-zero dimension");
  }
  const size_t n = gradients.size() / dim;
  if (n < 2) {
    return absl::FailedPreconditionError(absl::StrFormat(
        "pair-distance estimation needs at least 2 gradients, got %d", n));
  }

  const std::vector<std::pair<size_t, size_t>> pairs =
      SamplePairs(n, sample_pairs, rng);
  std::vector<double> distances;
  distances.reserve(pairs.size());
  for (const auto& [i, j] : pairs) {
    double sq = 0.0;
    for (size_t k = 0; k < dim; ++k) {
      const double diff = gradients[i * dim + k] - gradients[j * dim + k];
      sq += diff * diff;
    }
    distances.push_back(std::sqrt(sq));
  }

  double d = 0.0;
  switch (policy.kind) {
    case Kind::kMin:
      d = *std::min_element(distances.begin(), distances.end());
      break;
    case Kind::kMax:
      d = *std::max_element(distances.begin(), distances.end());
      break;
    case Kind::kQuantile:
      d = NearestRank(distances, policy.value);
      break;
    case Kind::kFixed:
      break;
  }
  return PairDistanceEstimate{d, pairs.size()};
}

absl::StatusOr<PairDistanceEstimate> EstimatePairDistance(
    const std::vector<std::vector<double>>& gradients,
    const PairDistancePolicy& policy, size_t sample_pairs, CounterRng& rng) {
  const size_t dim = gradients.empty() ? 1 : gradients.front().size();
  std::vector<double> flat;
  flat.reserve(gradients.size() * dim);
  for (const std::vector<double>& g : gradients) {
    if (g.size() != dim) {
      return absl::InvalidArgumentError("gradients must share one dimension");
    }
    flat.insert(flat.end(), g.begin(), g.end());
  }
  return EstimatePairDistance(flat, dim, policy, sample_pairs, rng);
}

absl::StatusOr<double> StepLoss(const AccountantConfig& cfg,
                                const PairDistanceEstimate& d) {
  if (absl::Status s = cfg.Validate(); !s.ok()) return s;
  if (!(d.d >= 0.0) || !std::isfinite(d.d)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("pair distance must be finite and >= 0, got %g", d.d));
  }
  absl::StatusOr<double> moment =
      AbsMoment({cfg.mu, cfg.q * d.d, cfg.NoiseVariance()});
  if (!moment.ok()) return moment.status();
  return std::pow(cfg.grad_dim * *moment, 1.0 / cfg.mu);
}

absl::StatusOr<AccountantState> Accumulate(AccountantState state, double loss) {
  if (!(loss >= 0.0) || !std::isfinite(loss)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("step loss must be finite and >= 0, got %g", loss));
  }
  state.losses.push_back(loss);
  return state;
}

absl::StatusOr<WdpBudget> EpsilonGivenDelta(const AccountantState& state,
                                            const AccountantConfig& cfg) {
  if (absl::Status s = CheckDeltaAndBeta(cfg); !s.ok()) return s;
  return WdpBudget{cfg.mu, state.total() - std::log(cfg.delta) / cfg.beta};
}

absl::StatusOr<DeltaReport> DeltaGivenEpsilon(const AccountantState& state,
                                              const AccountantConfig& cfg,
                                              double epsilon) {
  if (absl::Status s = CheckDeltaAndBeta(cfg); !s.ok()) return s;
  return AdvancedDelta(state.losses, epsilon, cfg.beta);
}

std::string CheckpointToJson(const AccountantCheckpoint& checkpoint) {
  nlohmann::ordered_json doc;
  doc["mu"] = checkpoint.mu;
  doc["beta"] = checkpoint.beta;
  doc["delta"] = checkpoint.delta;
  doc["losses"] = checkpoint.state.losses;
  doc["steps"] = checkpoint.state.steps();
  return doc.dump(2);
}

absl::StatusOr<AccountantCheckpoint> CheckpointFromJson(std::string_view text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    return absl::InvalidArgumentError("accountant checkpoint is not a JSON object");
  }
  AccountantCheckpoint checkpoint;
  try {
    checkpoint.mu = doc.at("mu").get<double>();
    checkpoint.beta = doc.at("beta").get<double>();
    checkpoint.delta = doc.at("delta").get<double>();
    checkpoint.state.losses = doc.at("losses").get<std::vector<double>>();
    if (doc.contains("steps") &&
        doc.at("steps").get<size_t>() != checkpoint.state.steps()) {
      return absl::InvalidArgumentError(
          "checkpoint 'steps' does not match the number of losses");
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrFormat("malformed accountant checkpoint: %s", e.what()));
  }
  for (double loss : checkpoint.state.losses) {
    if (!(loss >= 0.0)) {
      return absl::InvalidArgumentError("checkpoint losses must be >= 0");
    }
  }
  return checkpoint;
}

}  // namespace wdp
