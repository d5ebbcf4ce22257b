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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_split.h"
#include "absl/strings/string_view.h"
#include "wdp/accountant.h"
#include "wdp/composition.h"
#include "wdp/conversions.h"
#include "wdp/counter_rng.h"
#include "wdp/empirical_ot.h"
#include "wdp/format.h"
#include "wdp/mechanisms.h"
#include "wdp/simulation.h"

#define WDP_CONCAT_INNER(a, b) a##b
#define WDP_CONCAT(a, b) WDP_CONCAT_INNER(a, b)
#define WDP_ASSIGN_OR_RETURN_IMPL(tmp, lhs, expr) \
  auto tmp = (expr);                              \
  if (!tmp.ok()) return tmp.status();             \
  lhs = std::move(*tmp)
#define WDP_ASSIGN_OR_RETURN(lhs, expr) \
  WDP_ASSIGN_OR_RETURN_IMPL(WDP_CONCAT(status_or_, __LINE__), lhs, expr)
#define WDP_RETURN_IF_ERROR(expr)          \
  do {                                     \
    absl::Status status_ = (expr);         \
    if (!status_.ok()) return status_;     \
  } while (false)

namespace wdp::cli {
namespace {

// Upper bound on points in one --sweep-order range.
constexpr size_t kMaxSweepPoints = 100000;

absl::Status Invalid(std::string message) {
  return absl::InvalidArgumentError(std::move(message));
}

absl::StatusOr<double> ParseDouble(absl::string_view text, const char* what) {
  double value = 0.0;
  if (!absl::SimpleAtod(text, &value)) {
    return Invalid(absl::StrCat("cannot parse ", what, " value '",
                                std::string(text), "'"));
  }
  return value;
}

absl::StatusOr<std::vector<double>> ParseList(const std::string& text,
                                              const char* what) {
  std::vector<double> values;
  for (absl::string_view item :
       absl::StrSplit(absl::string_view(text), ',')) {
    WDP_ASSIGN_OR_RETURN(double value, ParseDouble(item, what));
    values.push_back(value);
  }
  return values;
}

absl::StatusOr<std::vector<double>> ParseSweep(const std::string& text) {
  std::vector<absl::string_view> parts =
      absl::StrSplit(absl::string_view(text), ':');
  if (parts.size() != 3) {
    return Invalid(absl::StrCat("--sweep-order expects lo:hi:step, got '", text, "'"));
  }
  WDP_ASSIGN_OR_RETURN(double lo, ParseDouble(parts[0], "--sweep-order"));
  WDP_ASSIGN_OR_RETURN(double hi, ParseDouble(parts[1], "--sweep-order"));
  WDP_ASSIGN_OR_RETURN(double step, ParseDouble(parts[2], "--sweep-order"));
  if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(hi - lo)) {
    return Invalid("--sweep-order needs finite lo <= hi and step > 0");
  }
  const double span = std::floor((hi - lo) / step + 1e-9);
  if (span + 1 > kMaxSweepPoints) return Invalid("--sweep-order has too many points");
  std::vector<double> orders;
  for (size_t i = 0; i <= static_cast<size_t>(span); ++i) orders.push_back(lo + i * step);
  return orders;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read '", path, "'"));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::NotFoundError(absl::StrCat("cannot write '", path, "'"));
  out << contents;
  out.close();
  if (!out) return absl::InternalError(absl::StrCat("failed writing '", path, "'"));
  return absl::OkStatus();
}

// "@path" reads a file; anything else is taken as the document itself.
absl::StatusOr<std::string> InlineOrFile(const std::string& text) {
  if (!text.empty() && text[0] == '@') return ReadFile(text.substr(1));
  return text;
}

absl::StatusOr<MechanismSpec> SpecFromFlags(const std::string& kind,
                                            const std::optional<double>& lambda,
                                            const std::optional<double>& sigma,
                                            double sensitivity) {
  if (kind == "laplace") {
    if (sigma.has_value()) return Invalid("--sigma applies to gaussian; use --lambda");
    if (!lambda.has_value()) return Invalid("laplace needs --lambda");
    return MechanismSpec::Create(MechanismKind::kLaplace, *lambda, sensitivity);
  }
  if (kind == "gaussian") {
    if (lambda.has_value()) return Invalid("--lambda applies to laplace; use --sigma");
    if (!sigma.has_value()) return Invalid("gaussian needs --sigma");
    return MechanismSpec::Create(MechanismKind::kGaussian, *sigma, sensitivity);
  }
  return Invalid(absl::StrCat("unknown mechanism kind '", kind, "'"));
}

absl::StatusOr<std::function<double(double)>> ParseMap(const std::string& text) {
  std::vector<absl::string_view> parts = absl::StrSplit(text, ':');
  const absl::string_view name = parts[0];
  std::vector<double> args;
  for (size_t i = 1; i < parts.size(); ++i) {
    WDP_ASSIGN_OR_RETURN(double v, ParseDouble(parts[i], "--map"));
    args.push_back(v);
  }
  auto arity = [&](size_t n) -> absl::Status {
    if (args.size() != n) {
      return Invalid(absl::StrFormat("--map %s takes %d argument(s)",
                                     std::string(name), n));
    }
    return absl::OkStatus();
  };
  if (name == "identity") {
    WDP_RETURN_IF_ERROR(arity(0));
    return std::function<double(double)>([](double x) { return x; });
  }
  if (name == "abs") {
    WDP_RETURN_IF_ERROR(arity(0));
    return std::function<double(double)>([](double x) { return std::abs(x); });
  }
  if (name == "square") {
    WDP_RETURN_IF_ERROR(arity(0));
    return std::function<double(double)>([](double x) { return x * x; });
  }
  if (name == "scale") {
    WDP_RETURN_IF_ERROR(arity(1));
    const double a = args[0];
    return std::function<double(double)>([a](double x) { return a * x; });
  }
  if (name == "shift") {
    WDP_RETURN_IF_ERROR(arity(1));
    const double b = args[0];
    return std::function<double(double)>([b](double x) { return x + b; });
  }
  if (name == "const") {
    WDP_RETURN_IF_ERROR(arity(1));
    const double c = args[0];
    return std::function<double(double)>([c](double) { return c; });
  }
  if (name == "clip") {
    WDP_RETURN_IF_ERROR(arity(2));
    const double lo = args[0];
    const double hi = args[1];
    if (!(lo <= hi)) return Invalid("--map clip:lo:hi needs lo <= hi");
    return std::function<double(double)>(
        [lo, hi](double x) { return std::clamp(x, lo, hi); });
  }
  return Invalid(absl::StrCat(
      "unknown --map '", text,
      "'; expected identity, abs, square, scale:a, shift:b, const:c or clip:lo:hi"));
}

absl::StatusOr<OtMethod> ParseMethod(const std::string& text) {
  if (text == "quantile") return OtMethod::kQuantile;
  if (text == "simplex") return OtMethod::kNetworkSimplex;
  return Invalid(absl::StrCat("unknown --method '", text, "'"));
}

Json BudgetJson(const WdpBudget& b) {
  Json j = Json::object();
  j["mu"] = Number(b.mu);
  j["epsilon"] = Number(b.epsilon);
  return j;
}

std::string LipschitzCaveat() {
  return "Lipschitz constant not supplied; assuming L = 1. The converted budget "
         "holds only if the loss is 1-Lipschitz.";
}

// Per-step gradients from JSON: an array of steps, each an array of
// examples, each a number or an array of numbers.
absl::StatusOr<std::vector<std::vector<std::vector<double>>>> ParseGradients(
    const std::string& text) {
  Json doc = Json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_array()) {
    return Invalid("gradients file must be a JSON array of steps");
  }
  std::vector<std::vector<std::vector<double>>> steps;
  for (const Json& step : doc) {
    if (!step.is_array()) return Invalid("each gradient step must be an array of examples");
    std::vector<std::vector<double>> examples;
    for (const Json& example : step) {
      if (example.is_number()) {
        examples.push_back({example.get<double>()});
      } else if (example.is_array()) {
        std::vector<double> g;
        for (const Json& v : example) {
          if (!v.is_number()) return Invalid("gradient components must be numbers");
          g.push_back(v.get<double>());
        }
        examples.push_back(std::move(g));
      } else {
        return Invalid("each example must be a number or an array of numbers");
      }
    }
    steps.push_back(std::move(examples));
  }
  return steps;
}

}  // namespace

absl::StatusOr<Envelope> RunMech(const MechOptions& o) {
  Envelope env;
  env.command = "mech";
  WDP_ASSIGN_OR_RETURN(MechanismSpec spec,
                       SpecFromFlags(o.kind, o.lambda, o.sigma, o.sensitivity));
  const bool wdp = o.framework == "wdp";
  const bool rdp = o.framework == "rdp";
  const bool dp = o.framework == "dp";
  if (!wdp && !rdp && !dp) {
    return Invalid(absl::StrCat("unknown framework '", o.framework, "'"));
  }
  env.config["kind"] = o.kind;
  env.config[o.kind == "laplace" ? "lambda" : "sigma"] = Number(spec.scale);
  env.config["sensitivity"] = Number(spec.sensitivity);
  env.config["framework"] = o.framework;
  if (!wdp && spec.sensitivity != 1.0) {
    env.warnings.push_back(absl::StrCat(
        o.framework, " budgets are stated for unit sensitivity; --sens is ignored"));
  }
  const std::string order_name = wdp ? "mu" : rdp ? "alpha" : "";

  auto evaluate = [&](double order) -> absl::StatusOr<double> {
    if (wdp) {
      WDP_ASSIGN_OR_RETURN(WdpBudget b, WdpForMechanism(spec, order));
      return b.epsilon;
    }
    if (rdp) {
      WDP_ASSIGN_OR_RETURN(RdpBudget b, spec.kind == MechanismKind::kLaplace
                                            ? RdpLaplace(spec.scale, order)
                                            : RdpGaussian(spec.scale, order));
      return b.epsilon;
    }
    WDP_ASSIGN_OR_RETURN(DpBudget b, spec.kind == MechanismKind::kLaplace
                                         ? DpLaplace(spec.scale)
                                         : DpGaussian(spec.scale));
    return b.epsilon;
  };

  if (o.sweep_order.has_value()) {
    if (dp) return Invalid("--sweep-order needs --framework wdp or rdp");
    WDP_ASSIGN_OR_RETURN(std::vector<double> orders, ParseSweep(*o.sweep_order));
    env.config["sweep_order"] = *o.sweep_order;
    Table table;
    table.columns = {order_name, "epsilon"};
    for (double order : orders) {
      absl::StatusOr<double> eps = evaluate(order);
      if (!eps.ok()) {
        if (eps.status().code() != absl::StatusCode::kInvalidArgument) return eps.status();
        env.warnings.push_back(absl::StrCat("skipped ", order_name, "=",
                                            FormatSignificant(order), ": ",
                                            eps.status().message()));
        continue;
      }
      table.rows.push_back({Number(order), Number(*eps)});
    }
    env.results["framework"] = o.framework;
    env.results["order"] = order_name;
    env.results["points"] = table.rows.size();
    env.table = std::move(table);
    return env;
  }

  double order = 0.0;
  if (wdp) order = o.mu;
  if (rdp) {
    if (!o.alpha.has_value()) return Invalid("--framework rdp needs --alpha");
    order = *o.alpha;
  }
  if (!dp) env.config[order_name] = Number(order);
  WDP_ASSIGN_OR_RETURN(double eps, evaluate(order));
  env.results["framework"] = o.framework;
  if (!dp) env.results[order_name] = Number(order);
  env.results["epsilon"] = Number(eps);
  if (dp) env.results["delta"] = Number(0.0);
  return env;
}

absl::StatusOr<Envelope> RunConvert(const ConvertOptions& o) {
  Envelope env;
  env.command = "convert";
  const std::string to = o.to.value_or(o.from == "wdp" ? "dp" : "wdp");
  if (o.from != "dp" && o.from != "rdp" && o.from != "wdp") {
    return Invalid(absl::StrCat("unknown --from '", o.from, "'"));
  }
  if (to != "wdp" && to != "rdp" && to != "dp" && to != "zcdp") {
    return Invalid(absl::StrCat("unknown --to '", to, "'"));
  }
  WDP_ASSIGN_OR_RETURN(LipschitzAssumption lip,
                       LipschitzAssumption::Create(o.lipschitz.value_or(1.0)));
  env.config["from"] = o.from;
  env.config["to"] = o.round_trip ? "dp" : to;
  env.config["epsilon"] = Number(o.epsilon);
  if (o.alpha.has_value()) env.config["alpha"] = Number(*o.alpha);
  env.config["sensitivity"] = Number(o.sensitivity);
  env.config["mu"] = Number(o.mu);
  env.config["lipschitz"] = Number(lip.lipschitz);
  env.config["round_trip"] = o.round_trip;

  if (o.round_trip) {
    if (o.from != "dp") return Invalid("--round-trip needs --from dp");
    if (o.to.has_value() && *o.to != "dp") return Invalid("--round-trip ends in dp");
    WDP_ASSIGN_OR_RETURN(RoundTripReport r,
                         DpRoundTrip(o.epsilon, o.sensitivity, o.mu, lip));
    env.results["input_epsilon"] = Number(r.input_epsilon);
    env.results["wdp"] = BudgetJson(r.wdp);
    env.results["output_epsilon"] = Number(r.output_epsilon);
    env.results["inflation"] = Number(r.inflation);
    if (!o.lipschitz.has_value()) env.warnings.push_back(LipschitzCaveat());
    return env;
  }

  WdpBudget wdp;
  if (o.from == "dp") {
    WDP_ASSIGN_OR_RETURN(wdp, DpToWdp(o.epsilon, o.sensitivity, o.mu));
  } else if (o.from == "rdp") {
    if (!o.alpha.has_value()) return Invalid("--from rdp needs --alpha");
    WDP_ASSIGN_OR_RETURN(wdp, RdpToWdp({*o.alpha, o.epsilon}, o.sensitivity, o.mu));
  } else {
    wdp = {o.mu, o.epsilon};
    WDP_RETURN_IF_ERROR(ValidateWdpBudget(wdp));
  }

  env.results["to"] = to;
  if (to == "wdp") {
    env.results["mu"] = Number(wdp.mu);
    env.results["epsilon"] = Number(wdp.epsilon);
  } else if (to == "rdp") {
    if (!o.alpha.has_value()) return Invalid("--to rdp needs --alpha");
    WDP_ASSIGN_OR_RETURN(RdpBudget r, WdpToRdp(wdp, lip, *o.alpha));
    env.results["alpha"] = Number(r.alpha);
    env.results["epsilon"] = Number(r.epsilon);
  } else if (to == "dp") {
    WDP_ASSIGN_OR_RETURN(DpBudget d, WdpToDp(wdp, lip));
    env.results["epsilon"] = Number(d.epsilon);
    env.results["delta"] = Number(d.delta);
  } else {
    WDP_ASSIGN_OR_RETURN(double rho, WdpToZcdp(wdp, lip));
    env.results["rho"] = Number(rho);
  }
  if (o.from != "wdp" && to != "wdp") env.results["via_wdp"] = BudgetJson(wdp);
  if (to != "wdp" && !o.lipschitz.has_value()) env.warnings.push_back(LipschitzCaveat());
  return env;
}

absl::StatusOr<Envelope> RunCompose(const ComposeOptions& o) {
  Envelope env;
  env.command = "compose";
  const int modes = o.sequential.has_value() + o.parallel.has_value() +
                    o.advanced.has_value() + o.group.has_value();
  if (modes != 1) {
    return Invalid("compose needs exactly one of --sequential, --parallel, --group, --advanced");
  }

  if (o.group.has_value()) {
    if (!o.epsilon.has_value()) return Invalid("--group needs --eps");
    env.config["rule"] = "group";
    env.config["k"] = *o.group;
    env.config["mu"] = Number(o.mu);
    env.config["epsilon"] = Number(*o.epsilon);
    WDP_ASSIGN_OR_RETURN(WdpBudget b, GroupPrivacy({o.mu, *o.epsilon}, *o.group));
    env.results["rule"] = "group";
    env.results["k"] = *o.group;
    env.results["mu"] = Number(b.mu);
    env.results["epsilon"] = Number(b.epsilon);
    return env;
  }

  if (o.advanced.has_value()) {
    if (!o.epsilon.has_value()) return Invalid("--advanced needs --eps");
    WDP_ASSIGN_OR_RETURN(std::vector<double> losses, ParseList(*o.advanced, "--advanced"));
    env.config["rule"] = "advanced";
    env.config["losses"] = *o.advanced;
    env.config["epsilon"] = Number(*o.epsilon);
    env.config["beta"] = Number(o.beta);
    WDP_ASSIGN_OR_RETURN(DeltaReport r, AdvancedDelta(losses, *o.epsilon, o.beta));
    double sum = 0.0;
    for (double v : losses) sum += v;
    env.results["rule"] = "advanced";
    env.results["count"] = losses.size();
    env.results["sum_losses"] = Number(sum);
    env.results["epsilon"] = Number(*o.epsilon);
    env.results["beta"] = Number(o.beta);
    env.results["delta"] = Number(r.delta);
    env.results["vacuous"] = r.vacuous;
    if (r.vacuous) {
      env.warnings.push_back("delta >= 1: the tail bound is vacuous at this epsilon");
    }
    return env;
  }

  const bool sequential = o.sequential.has_value();
  const std::string& list = sequential ? *o.sequential : *o.parallel;
  WDP_ASSIGN_OR_RETURN(std::vector<double> eps, ParseList(list, "budget"));
  std::vector<double> mus(eps.size(), o.mu);
  if (o.mus.has_value()) {
    WDP_ASSIGN_OR_RETURN(mus, ParseList(*o.mus, "--mus"));
    if (mus.size() != eps.size()) return Invalid("--mus must list one order per budget");
  }
  std::vector<WdpBudget> budgets;
  for (size_t i = 0; i < eps.size(); ++i) budgets.push_back({mus[i], eps[i]});
  WDP_ASSIGN_OR_RETURN(BudgetSequence seq, BudgetSequence::Create(std::move(budgets)));
  env.config["rule"] = sequential ? "sequential" : "parallel";
  env.config["budgets"] = list;
  if (o.mus.has_value()) {
    env.config["mus"] = *o.mus;
  } else {
    env.config["mu"] = Number(o.mu);
  }
  const WdpBudget b = sequential ? ComposeSequential(seq) : ComposeParallel(seq);
  env.results["rule"] = sequential ? "sequential" : "parallel";
  env.results["count"] = seq.budgets().size();
  env.results["mu"] = Number(b.mu);
  env.results["epsilon"] = Number(b.epsilon);
  if (std::any_of(mus.begin(), mus.end(), [&](double m) { return m != seq.mu(); })) {
    env.warnings.push_back(absl::StrCat("mixed orders composed at the smallest order mu=",
                                        FormatSignificant(seq.mu())));
  }
  return env;
}

absl::StatusOr<Envelope> RunAccount(const AccountOptions& o) {
  Envelope env;
  env.command = "account";
  if (!o.losses_file.has_value() && !o.gradients_file.has_value() && !o.steps.has_value()) {
    return Invalid("account needs --losses-file, --gradients-file or --steps");
  }
  AccountantConfig cfg;
  AccountantState state;
  if (o.losses_file.has_value()) {
    WDP_ASSIGN_OR_RETURN(std::string text, ReadFile(*o.losses_file));
    WDP_ASSIGN_OR_RETURN(AccountantCheckpoint cp, CheckpointFromJson(text));
    cfg.mu = cp.mu;
    cfg.beta = cp.beta;
    cfg.delta = cp.delta;
    state = std::move(cp.state);
    if (o.mu.has_value() && *o.mu != cp.mu && state.steps() > 0) {
      return Invalid(absl::StrCat("checkpoint losses were accounted at mu=",
                                  FormatSignificant(cp.mu), "; cannot continue at mu=",
                                  FormatSignificant(*o.mu)));
    }
  }
  if (o.q.has_value()) cfg.q = *o.q;
  if (o.sigma.has_value()) cfg.sigma = *o.sigma;
  if (o.mu.has_value()) cfg.mu = *o.mu;
  if (o.beta.has_value()) cfg.beta = *o.beta;
  if (o.delta.has_value()) cfg.delta = *o.delta;
  if (o.grad_dim.has_value()) cfg.grad_dim = *o.grad_dim;

  std::vector<double> distances(state.steps(), std::nan(""));
  if (o.gradients_file.has_value()) {
    WDP_ASSIGN_OR_RETURN(std::string text, ReadFile(*o.gradients_file));
    WDP_ASSIGN_OR_RETURN(auto steps, ParseGradients(text));
    WDP_ASSIGN_OR_RETURN(PairDistancePolicy policy, PairDistancePolicy::Parse(o.policy));
    if (!steps.empty() && !steps[0].empty()) {
      const int dim = static_cast<int>(steps[0][0].size());
      if (o.grad_dim.has_value() && *o.grad_dim != dim) {
        return Invalid(absl::StrFormat("--grad-dim %d disagrees with gradient length %d",
                                       *o.grad_dim, dim));
      }
      cfg.grad_dim = dim;
    }
    WDP_RETURN_IF_ERROR(cfg.Validate());
    for (size_t t = 0; t < steps.size(); ++t) {
      CounterRng rng(o.seed, t);
      WDP_ASSIGN_OR_RETURN(PairDistanceEstimate d,
                           EstimatePairDistance(steps[t], policy, o.sample_pairs, rng));
      WDP_ASSIGN_OR_RETURN(double loss, StepLoss(cfg, d));
      WDP_ASSIGN_OR_RETURN(state, Accumulate(std::move(state), loss));
      distances.push_back(d.d);
    }
    env.config["gradients_file"] = *o.gradients_file;
    env.config["policy"] = policy.ToString();
    env.config["sample_pairs"] = o.sample_pairs;
    env.config["seed"] = o.seed;
  }
  if (o.steps.has_value()) {
    if (*o.steps < 0) return Invalid("--steps must be >= 0");
    if (!o.distance.has_value()) return Invalid("--steps needs --distance");
    WDP_RETURN_IF_ERROR(cfg.Validate());
    WDP_ASSIGN_OR_RETURN(double loss, StepLoss(cfg, {*o.distance, 0}));
    for (int t = 0; t < *o.steps; ++t) {
      WDP_ASSIGN_OR_RETURN(state, Accumulate(std::move(state), loss));
      distances.push_back(*o.distance);
    }
    env.config["steps"] = *o.steps;
    env.config["distance"] = Number(*o.distance);
  }
  WDP_RETURN_IF_ERROR(cfg.Validate());

  if (o.losses_file.has_value()) env.config["losses_file"] = *o.losses_file;
  env.config["q"] = Number(cfg.q);
  env.config["sigma"] = Number(cfg.sigma);
  env.config["mu"] = Number(cfg.mu);
  env.config["beta"] = Number(cfg.beta);
  env.config["delta"] = Number(cfg.delta);
  env.config["grad_dim"] = cfg.grad_dim;

  Table table;
  table.columns = {"step", "distance", "loss", "epsilon"};
  AccountantState prefix;
  for (size_t t = 0; t < state.steps(); ++t) {
    WDP_ASSIGN_OR_RETURN(prefix, Accumulate(std::move(prefix), state.losses[t]));
    WDP_ASSIGN_OR_RETURN(WdpBudget b, EpsilonGivenDelta(prefix, cfg));
    table.rows.push_back(
        {t + 1, Number(distances[t]), Number(state.losses[t]), Number(b.epsilon)});
  }
  WDP_ASSIGN_OR_RETURN(WdpBudget total, EpsilonGivenDelta(state, cfg));
  env.results["steps"] = state.steps();
  env.results["total_loss"] = Number(state.total());
  env.results["mu"] = Number(total.mu);
  env.results["beta"] = Number(cfg.beta);
  env.results["delta"] = Number(cfg.delta);
  env.results["epsilon"] = Number(total.epsilon);
  if (o.epsilon.has_value()) {
    WDP_ASSIGN_OR_RETURN(DeltaReport r, DeltaGivenEpsilon(state, cfg, *o.epsilon));
    env.results["target_epsilon"] = Number(*o.epsilon);
    env.results["delta_at_target"] = Number(r.delta);
    env.results["vacuous"] = r.vacuous;
    if (r.vacuous) {
      env.warnings.push_back("delta >= 1 at the target epsilon: the tail bound is vacuous");
    }
  }
  if (o.save.has_value()) {
    WDP_RETURN_IF_ERROR(WriteFile(
        *o.save, CheckpointToJson({cfg.mu, cfg.beta, cfg.delta, state}) + "\n"));
    env.results["checkpoint"] = *o.save;
  }
  env.table = std::move(table);
  return env;
}

absl::StatusOr<Envelope> RunOt(const OtOptions& o) {
  Envelope env;
  env.command = "ot";
  if (o.audit) {
    WDP_ASSIGN_OR_RETURN(MechanismSpec spec,
                         SpecFromFlags(o.kind, o.lambda, o.sigma, o.sensitivity));
    env.config["mode"] = "audit";
    env.config["kind"] = o.kind;
    env.config[o.kind == "laplace" ? "lambda" : "sigma"] = Number(spec.scale);
    env.config["sensitivity"] = Number(spec.sensitivity);
    env.config["mu"] = Number(o.mu);
    env.config["samples"] = o.samples;
    env.config["seed"] = o.seed;
    WDP_ASSIGN_OR_RETURN(MechanismAuditReport r,
                         MechanismAudit(spec, o.mu, o.samples, o.seed));
    env.results["mode"] = "audit";
    env.results["empirical"] = Number(r.empirical);
    env.results["closed_form"] = Number(r.closed_form);
    env.results["samples"] = r.samples;
    env.results["empirical_exceeds_closed_form"] = r.empirical_exceeds_closed_form;
    if (r.empirical_exceeds_closed_form) {
      env.warnings.push_back(absl::StrCat(
          "empirical distance ", FormatSignificant(r.empirical),
          " exceeds the closed-form budget ", FormatSignificant(r.closed_form)));
    }
    return env;
  }

  if (!o.p.has_value() || !o.q.has_value()) return Invalid("ot needs --p and --q (or --audit)");
  WDP_ASSIGN_OR_RETURN(std::string p_text, InlineOrFile(*o.p));
  WDP_ASSIGN_OR_RETURN(std::string q_text, InlineOrFile(*o.q));
  WDP_ASSIGN_OR_RETURN(DiscreteDist p, DiscreteDist::FromJson(p_text));
  WDP_ASSIGN_OR_RETURN(DiscreteDist q, DiscreteDist::FromJson(q_text));
  WDP_ASSIGN_OR_RETURN(OtMethod method, ParseMethod(o.method));
  env.config["p"] = Json::parse(p.ToJson());
  env.config["q"] = Json::parse(q.ToJson());
  env.config["mu"] = Number(o.mu);

  if (o.dual) {
    if (o.map.has_value()) return Invalid("--dual and --map are exclusive");
    if (o.mu != 1.0) return Invalid("--dual is defined for --mu 1");
    env.config["mode"] = "dual";
    env.config["method"] = o.method;
    WDP_ASSIGN_OR_RETURN(double primal, WassersteinDiscrete(p, q, 1.0, method));
    WDP_ASSIGN_OR_RETURN(double dual, KantorovichDual1d(p, q));
    env.results["mode"] = "dual";
    env.results["primal"] = Number(primal);
    env.results["dual"] = Number(dual);
    env.results["gap"] = Number(std::abs(primal - dual));
    return env;
  }
  if (o.map.has_value()) {
    WDP_ASSIGN_OR_RETURN(auto map, ParseMap(*o.map));
    env.config["mode"] = "pushforward";
    env.config["map"] = *o.map;
    WDP_ASSIGN_OR_RETURN(PushforwardReport r, PushforwardCheck(p, q, map, o.mu));
    env.results["mode"] = "pushforward";
    env.results["before"] = Number(r.before);
    env.results["after"] = Number(r.after);
    env.results["non_expansive"] = r.non_expansive;
    if (!r.non_expansive) {
      env.warnings.push_back(absl::StrCat(
          "distance grew under map '", *o.map,
          "'; post-processing is only guaranteed non-expansive for 1-Lipschitz maps"));
    }
    return env;
  }
  env.config["mode"] = "distance";
  env.config["method"] = o.method;
  WDP_ASSIGN_OR_RETURN(double w, WassersteinDiscrete(p, q, o.mu, method));
  env.results["mode"] = "distance";
  env.results["distance"] = Number(w);
  return env;
}

absl::StatusOr<Envelope> RunSimulate(const SimulateOptions& o) {
  Envelope env;
  env.command = "simulate";
  WDP_ASSIGN_OR_RETURN(GradientTrace trace,
                       GenerateTrace(o.seed, o.steps, o.examples, o.shape, o.scale));
  SimulationConfig cfg;
  cfg.accountant.q = o.q;
  cfg.accountant.sigma = o.sigma;
  cfg.accountant.mu = o.mu;
  cfg.accountant.beta = o.beta;
  cfg.accountant.delta = o.delta;
  WDP_ASSIGN_OR_RETURN(cfg.policy, PairDistancePolicy::Parse(o.policy));
  cfg.sample_pairs = o.sample_pairs;
  cfg.clip_quantile = o.clip_quantile;
  cfg.threads = o.threads;
  WDP_ASSIGN_OR_RETURN(CompositionCurve curve,
                       RunComposition(trace, cfg, o.clip_quantile.has_value()));

  env.config = Json::parse(curve.MetadataJson());
  env.config["examples"] = o.examples;
  env.config["shape"] = Number(o.shape);
  env.config["scale"] = Number(o.scale);
  env.config["threads"] = o.threads;

  Table table;
  table.columns = {"step", "epsilon_wdp", "epsilon_rdp_baseline"};
  for (size_t t = 0; t < curve.epsilon_wdp.size(); ++t) {
    table.rows.push_back(
        {t, Number(curve.epsilon_wdp[t]), Number(curve.epsilon_rdp_baseline[t])});
  }
  const double wdp = curve.epsilon_wdp.back();
  const double rdp = curve.epsilon_rdp_baseline.back();
  env.results["final_epsilon_wdp"] = Number(wdp);
  env.results["final_epsilon_rdp_baseline"] = Number(rdp);
  env.results["lower_final"] = wdp < rdp ? "wdp" : rdp < wdp ? "rdp_baseline" : "tie";
  env.table = std::move(table);
  env.csv = curve.ToCsv();

  if (o.out.has_value()) {
    std::string meta_path = o.metadata.value_or(
        std::filesystem::path(*o.out).replace_extension(".json").string());
    if (meta_path == *o.out) return Invalid("--metadata must differ from --out");
    WDP_RETURN_IF_ERROR(WriteFile(*o.out, *env.csv));
    WDP_RETURN_IF_ERROR(WriteFile(meta_path, curve.MetadataJson() + "\n"));
    env.results["csv_file"] = *o.out;
    env.results["metadata_file"] = meta_path;
  } else if (o.metadata.has_value()) {
    WDP_RETURN_IF_ERROR(WriteFile(*o.metadata, curve.MetadataJson() + "\n"));
    env.results["metadata_file"] = *o.metadata;
  }
  return env;
}

}  // namespace wdp::cli
