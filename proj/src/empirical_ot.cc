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

#include "wdp/empirical_ot.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"
#include "json.hpp"
#include "wdp/counter_rng.h"
#include "wdp/linear_program.h"
#include "wdp/transport_simplex.h"

namespace wdp {
namespace {

constexpr double kWeightSumTolerance = 1e-12;

absl::Status CheckOrder(double mu) {
  if (!(mu >= 1.0) || !std::isfinite(mu)) {
    return absl::InvalidArgumentError(
        absl::StrFormat("Wasserstein order mu must be >= 1, got %g", mu));
  }
  return absl::OkStatus();
}

absl::Status CheckSupport(const DiscreteDist& p, const DiscreteDist& q) {
  if (p.size() > kMaxSupportAtoms || q.size() > kMaxSupportAtoms) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "supports of %d and %d atoms exceed the %d-atom limit", p.size(),
        q.size(), kMaxSupportAtoms));
  }
  return absl::OkStatus();
}

double GroundCost(double x, double y, double mu) {
  const double gap = std::abs(x - y);
  return mu == 1.0 ? gap : std::pow(gap, mu);
}

// Monotone coupling of two sorted supports; optimal for convex ground cost.
double QuantileCost(const DiscreteDist& p, const DiscreteDist& q, double mu) {
  const std::vector<double>& x = p.atoms();
  const std::vector<double>& y = q.atoms();
  size_t i = 0;
  size_t j = 0;
  double wp = p.weights()[0];
  double wq = q.weights()[0];
  double cost = 0.0;
  while (i < x.size() && j < y.size()) {
    const double moved = std::min(wp, wq);
    cost += moved * GroundCost(x[i], y[j], mu);
    wp -= moved;
    wq -= moved;
    if (wp <= wq) {
      if (++i < x.size()) wp = p.weights()[i];
    } else {
      if (++j < y.size()) wq = q.weights()[j];
    }
  }
  return cost;
}

absl::StatusOr<double> SimplexCost(const DiscreteDist& p, const DiscreteDist& q,
                                   double mu) {
  std::vector<double> cost;
  cost.reserve(p.size() * q.size());
  for (double x : p.atoms()) {
    for (double y : q.atoms()) cost.push_back(GroundCost(x, y, mu));
  }
  absl::StatusOr<TransportSolution> solution =
      SolveTransport(p.weights(), q.weights(), cost);
  if (!solution.ok()) return solution.status();
  return solution->cost;
}

}  // namespace

absl::StatusOr<DiscreteDist> DiscreteDist::Create(std::vector<double> atoms,
                                                  std::vector<double> weights) {
  if (atoms.empty() || atoms.size() != weights.size()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "distribution needs matching non-empty atoms and weights (%d vs %d)",
        atoms.size(), weights.size()));
  }
  double total = 0.0;
  for (size_t i = 0; i < atoms.size(); ++i) {
    if (!std::isfinite(atoms[i])) {
      return absl::InvalidArgumentError("distribution atoms must be finite");
    }
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      return absl::InvalidArgumentError(
          absl::StrFormat("weights must be finite and >= 0, got %g", weights[i]));
    }
    total += weights[i];
  }
  if (std::abs(total - 1.0) > kWeightSumTolerance) {
    return absl::InvalidArgumentError(
        absl::StrFormat("weights must sum to 1, got %.17g", total));
  }

  std::vector<size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return atoms[a] < atoms[b]; });
  std::vector<double> sorted_atoms;
  std::vector<double> sorted_weights;
  for (size_t idx : order) {
    if (!sorted_atoms.empty() && sorted_atoms.back() == atoms[idx]) {
      sorted_weights.back() += weights[idx];
    } else {
      sorted_atoms.push_back(atoms[idx]);
      sorted_weights.push_back(weights[idx]);
    }
  }
  return DiscreteDist(std::move(sorted_atoms), std::move(sorted_weights));
}

DiscreteDist DiscreteDist::PointMass(double atom) {
  return DiscreteDist({atom}, {1.0});
}

absl::StatusOr<DiscreteDist> DiscreteDist::FromJson(std::string_view text) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) {
    return absl::InvalidArgumentError(
        "distribution must be a JSON array of [atom, weight] pairs");
  }
  std::vector<double> atoms;
  std::vector<double> weights;
  for (const nlohmann::json& pair : doc) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() ||
        !pair[1].is_number()) {
      return absl::InvalidArgumentError(
          "each distribution entry must be a numeric [atom, weight] pair");
    }
    atoms.push_back(pair[0].get<double>());
    weights.push_back(pair[1].get<double>());
  }
  return Create(std::move(atoms), std::move(weights));
}

std::string DiscreteDist::ToJson() const {
  nlohmann::json doc = nlohmann::json::array();
  for (size_t i = 0; i < atoms_.size(); ++i) {
    doc.push_back({atoms_[i], weights_[i]});
  }
  return doc.dump();
}

absl::StatusOr<double> Wasserstein1dSamples(std::span<const double> x,
                                            std::span<const double> y,
                                            double mu) {
  if (absl::Status s = CheckOrder(mu); !s.ok()) return s;
  if (x.empty() || x.size() != y.size()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "sample sets must be non-empty and equal-sized (%d vs %d)", x.size(),
        y.size()));
  }
  std::vector<double> xs(x.begin(), x.end());
  std::vector<double> ys(y.begin(), y.end());
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  double total = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) total += GroundCost(xs[i], ys[i], mu);
  return std::pow(total / static_cast<double>(xs.size()), 1.0 / mu);
}

absl::StatusOr<double> TransportCost(const DiscreteDist& p,
                                     const DiscreteDist& q, double mu,
                                     OtMethod method) {
  if (absl::Status s = CheckOrder(mu); !s.ok()) return s;
  if (absl::Status s = CheckSupport(p, q); !s.ok()) return s;
  switch (method) {
    case OtMethod::kQuantile:
      return QuantileCost(p, q, mu);
    case OtMethod::kNetworkSimplex:
      return SimplexCost(p, q, mu);
  }
  return absl::InvalidArgumentError("unknown transport method");
}

absl::StatusOr<double> WassersteinDiscrete(const DiscreteDist& p,
                                           const DiscreteDist& q, double mu,
                                           OtMethod method) {
  absl::StatusOr<double> cost = TransportCost(p, q, mu, method);
  if (!cost.ok()) return cost.status();
  return std::pow(std::max(*cost, 0.0), 1.0 / mu);
}

absl::StatusOr<double> KantorovichDual1d(const DiscreteDist& p,
                                         const DiscreteDist& q) {
  if (absl::Status s = CheckSupport(p, q); !s.ok()) return s;
  // Merged support with signed mass difference p - q at each atom.
  std::vector<double> support;
  std::vector<double> diff;
  size_t i = 0;
  size_t j = 0;
  while (i < p.size() || j < q.size()) {
    const bool take_p = j == q.size() || (i < p.size() && p.atoms()[i] <= q.atoms()[j]);
    const bool take_q = i == p.size() || (j < q.size() && q.atoms()[j] <= p.atoms()[i]);
    support.push_back(take_p ? p.atoms()[i] : q.atoms()[j]);
    double d = 0.0;
    if (take_p) d += p.weights()[i++];
    if (take_q) d -= q.weights()[j++];
    diff.push_back(d);
  }
  const size_t k = support.size();
  if (k == 1) return 0.0;

  // Potentials are shift-invariant; pin them to [0, span] so the LP is
  // bounded even when the mass differences do not sum to exactly zero.
  const double span = support.back() - support.front();
  LinearProgram lp;
  lp.c = diff;
  for (size_t a = 0; a < k; ++a) {
    for (size_t b = 0; b < k; ++b) {
      if (a == b) continue;
      std::vector<double> row(k, 0.0);
      row[a] = 1.0;
      row[b] = -1.0;
      lp.a.push_back(std::move(row));
      lp.b.push_back(std::abs(support[a] - support[b]));
    }
    std::vector<double> cap(k, 0.0);
    cap[a] = 1.0;
    lp.a.push_back(std::move(cap));
    lp.b.push_back(span);
  }
  absl::StatusOr<LpSolution> solution = SolveLinearProgram(lp);
  if (!solution.ok()) return solution.status();
  return std::max(solution->objective, 0.0);
}

absl::StatusOr<PushforwardReport> PushforwardCheck(
    const DiscreteDist& p, const DiscreteDist& q,
    const std::function<double(double)>& map, double mu) {
  absl::StatusOr<double> before = WassersteinDiscrete(p, q, mu);
  if (!before.ok()) return before.status();
  auto push = [&](const DiscreteDist& d) {
    std::vector<double> atoms;
    atoms.reserve(d.size());
    for (double a : d.atoms()) atoms.push_back(map(a));
    return DiscreteDist::Create(std::move(atoms), d.weights());
  };
  absl::StatusOr<DiscreteDist> pushed_p = push(p);
  if (!pushed_p.ok()) return pushed_p.status();
  absl::StatusOr<DiscreteDist> pushed_q = push(q);
  if (!pushed_q.ok()) return pushed_q.status();
  absl::StatusOr<double> after = WassersteinDiscrete(*pushed_p, *pushed_q, mu);
  if (!after.ok()) return after.status();
  return PushforwardReport{*before, *after, *after <= *before + 1e-9};
}

absl::StatusOr<MechanismAuditReport> MechanismAudit(const MechanismSpec& spec,
                                                    double mu, size_t samples,
                                                    uint64_t seed) {
  if (samples == 0) {
    return absl::InvalidArgumentError("mechanism audit needs at least 1 sample");
  }
  absl::StatusOr<WdpBudget> closed_form = WdpForMechanism(spec, mu);
  if (!closed_form.ok()) return closed_form.status();

  auto draw = [&](uint64_t stream, double shift) {
    CounterRng rng(seed, stream);
    std::vector<double> out(samples);
    for (double& v : out) {
      if (spec.kind == MechanismKind::kGaussian) {
        v = shift + spec.scale * rng.NextNormal();
      } else {
        const double u = rng.NextUniform() - 0.5;
        v = shift - spec.scale * std::copysign(1.0, u) *
                        std::log1p(-2.0 * std::abs(u));
      }
    }
    return out;
  };
  const std::vector<double> x = draw(1, 0.0);
  const std::vector<double> y = draw(2, spec.sensitivity);
  absl::StatusOr<double> empirical = Wasserstein1dSamples(x, y, mu);
  if (!empirical.ok()) return empirical.status();

  MechanismAuditReport report;
  report.empirical = *empirical;
  report.closed_form = closed_form->epsilon;
  report.samples = samples;
  report.empirical_exceeds_closed_form = report.empirical > report.closed_form;
  return report;
}

}  // namespace wdp
