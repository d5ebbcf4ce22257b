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

#include "cli.h"

#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/numbers.h"
#include "commands.h"
#include "output.h"

namespace wdp::cli {
namespace {

void AddMech(CLI::App& app, MechOptions& o) {
  app.add_option("--kind", o.kind, "laplace or gaussian")
      ->required()
      ->check(CLI::IsMember({"laplace", "gaussian"}));
  app.add_option("--lambda", o.lambda, "Laplace scale");
  app.add_option("--sigma", o.sigma, "Gaussian scale");
  app.add_option("--sens", o.sensitivity, "sensitivity")->capture_default_str();
  app.add_option("--mu", o.mu, "WDP order")->capture_default_str();
  app.add_option("--framework", o.framework, "wdp, rdp or dp")
      ->capture_default_str()
      ->check(CLI::IsMember({"wdp", "rdp", "dp"}));
  app.add_option("--alpha", o.alpha, "RDP order");
  app.add_option("--sweep-order", o.sweep_order,
                 "lo:hi:step; emits the budget curve over the order");
}

void AddConvert(CLI::App& app, ConvertOptions& o) {
  app.add_option("--from", o.from, "dp, rdp or wdp")
      ->required()
      ->check(CLI::IsMember({"dp", "rdp", "wdp"}));
  app.add_option("--to", o.to, "wdp, rdp, dp or zcdp")
      ->check(CLI::IsMember({"wdp", "rdp", "dp", "zcdp"}));
  app.add_option("--eps", o.epsilon, "input epsilon")->required();
  app.add_option("--alpha", o.alpha, "RDP order");
  app.add_option("--sens", o.sensitivity, "sensitivity")->capture_default_str();
  app.add_option("--mu", o.mu, "WDP order")->capture_default_str();
  app.add_option("--lipschitz", o.lipschitz, "Lipschitz constant L (default 1)");
  app.add_flag("--round-trip", o.round_trip, "report DP -> WDP -> DP inflation");
}

void AddCompose(CLI::App& app, ComposeOptions& o) {
  app.add_option("--sequential", o.sequential, "comma-separated epsilons");
  app.add_option("--parallel", o.parallel, "comma-separated epsilons");
  app.add_option("--group", o.group, "group size k");
  app.add_option("--advanced", o.advanced, "comma-separated expected losses");
  app.add_option("--eps", o.epsilon, "epsilon for --group / --advanced");
  app.add_option("--mu", o.mu, "order of every budget")->capture_default_str();
  app.add_option("--mus", o.mus, "comma-separated per-budget orders");
  app.add_option("--beta", o.beta, "tail parameter for --advanced")->capture_default_str();
}

void AddAccount(CLI::App& app, AccountOptions& o) {
  app.add_option("--losses-file", o.losses_file, "checkpoint JSON to resume");
  app.add_option("--gradients-file", o.gradients_file,
                 "JSON array of steps of per-example gradients");
  app.add_option("--steps", o.steps, "steps to add at a fixed --distance");
  app.add_option("--distance", o.distance, "pair distance d for --steps");
  app.add_option("--q", o.q, "subsampling probability");
  app.add_option("--sigma", o.sigma, "noise scale");
  app.add_option("--mu", o.mu, "WDP order");
  app.add_option("--beta", o.beta, "tail parameter");
  app.add_option("--delta", o.delta, "failure probability");
  app.add_option("--grad-dim", o.grad_dim, "gradient dimension");
  app.add_option("--policy", o.policy, "min, max, quantile:p or fixed:d")
      ->capture_default_str();
  app.add_option("--sample-pairs", o.sample_pairs, "pairs per step (0 = all)")
      ->capture_default_str();
  app.add_option("--epsilon", o.epsilon, "also report delta at this epsilon");
  app.add_option("--save", o.save, "write the updated checkpoint");
}

void AddOt(CLI::App& app, OtOptions& o) {
  app.add_option("--p", o.p, "distribution as [[atom, weight], ...] or @file");
  app.add_option("--q", o.q, "distribution as [[atom, weight], ...] or @file");
  app.add_option("--mu", o.mu, "order")->capture_default_str();
  app.add_option("--method", o.method, "quantile or simplex")
      ->capture_default_str()
      ->check(CLI::IsMember({"quantile", "simplex"}));
  app.add_flag("--dual", o.dual, "compare against the Kantorovich dual LP");
  app.add_option("--map", o.map,
                 "pushforward map: identity, abs, square, scale:a, shift:b, const:c, "
                 "clip:lo:hi");
  app.add_flag("--audit", o.audit, "empirical vs closed-form mechanism distance");
  app.add_option("--kind", o.kind, "mechanism for --audit")
      ->capture_default_str()
      ->check(CLI::IsMember({"laplace", "gaussian"}));
  app.add_option("--lambda", o.lambda, "Laplace scale for --audit");
  app.add_option("--sigma", o.sigma, "Gaussian scale for --audit");
  app.add_option("--sens", o.sensitivity, "sensitivity for --audit")->capture_default_str();
  app.add_option("--samples", o.samples, "samples per side for --audit")
      ->capture_default_str();
}

void AddSimulate(CLI::App& app, SimulateOptions& o) {
  app.add_option("--steps", o.steps, "steps T")->capture_default_str();
  app.add_option("--examples", o.examples, "examples per step")->capture_default_str();
  app.add_option("--shape", o.shape, "Weibull shape")->capture_default_str();
  app.add_option("--scale", o.scale, "Weibull scale")->capture_default_str();
  app.add_option("--sigma", o.sigma, "noise scale")->capture_default_str();
  app.add_option("--q", o.q, "subsampling probability")->capture_default_str();
  app.add_option("--mu", o.mu, "WDP order")->capture_default_str();
  app.add_option("--beta", o.beta, "tail parameter")->capture_default_str();
  app.add_option("--delta", o.delta, "failure probability")->capture_default_str();
  app.add_option("--policy", o.policy, "min, max, quantile:p or fixed:d")
      ->capture_default_str();
  app.add_option("--sample-pairs", o.sample_pairs, "pairs per step (0 = 10 x examples)")
      ->capture_default_str();
  app.add_option("--clip-quantile", o.clip_quantile, "clip gradients at this quantile");
  app.add_option("--threads", o.threads, "worker threads")->capture_default_str();
  app.add_option("--out", o.out, "write the CSV curve here");
  app.add_option("--metadata", o.metadata, "metadata sidecar path (default <out>.json)");
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return kExitOk;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kNotFound:
      return kExitValidation;
    default:
      return kExitNumeric;
  }
}

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, const std::optional<std::string>& env_seed) {
  CLI::App app{"Wasserstein differential privacy budgets and accounting", "wdp"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::string> format_text;
  uint64_t seed = kDefaultSeed;
  app.add_option("--format", format_text, "json (default), csv or table")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--seed", seed, "seed for stochastic commands; WDP_SEED overrides")
      ->capture_default_str();

  MechOptions mech;
  ConvertOptions convert;
  ComposeOptions compose;
  AccountOptions account;
  OtOptions ot;
  SimulateOptions simulate;
  CLI::App* mech_cmd = app.add_subcommand("mech", "budget of a basic mechanism");
  CLI::App* convert_cmd = app.add_subcommand("convert", "convert between DP, RDP and WDP");
  CLI::App* compose_cmd = app.add_subcommand("compose", "compose WDP budgets");
  CLI::App* account_cmd = app.add_subcommand("account", "Wasserstein accountant");
  CLI::App* ot_cmd = app.add_subcommand("ot", "exact 1-D optimal transport");
  CLI::App* simulate_cmd = app.add_subcommand("simulate", "synthetic composition run");
  AddMech(*mech_cmd, mech);
  AddConvert(*convert_cmd, convert);
  AddCompose(*compose_cmd, compose);
  AddAccount(*account_cmd, account);
  AddOt(*ot_cmd, ot);
  AddSimulate(*simulate_cmd, simulate);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (env_seed.has_value()) {
    if (!absl::SimpleAtoi(*env_seed, &seed)) {
      err << "error: WDP_SEED must be a non-negative integer, got '" << *env_seed << "'\n";
      return kExitValidation;
    }
  }
  account.seed = seed;
  ot.seed = seed;
  simulate.seed = seed;

  std::string default_format = "json";
  if (mech_cmd->parsed() && mech.sweep_order.has_value()) default_format = "csv";
  const Format format = *ParseFormat(format_text.value_or(default_format));

  absl::StatusOr<Envelope> envelope;
  if (mech_cmd->parsed()) envelope = RunMech(mech);
  if (convert_cmd->parsed()) envelope = RunConvert(convert);
  if (compose_cmd->parsed()) envelope = RunCompose(compose);
  if (account_cmd->parsed()) envelope = RunAccount(account);
  if (ot_cmd->parsed()) envelope = RunOt(ot);
  if (simulate_cmd->parsed()) envelope = RunSimulate(simulate);

  if (!envelope.ok()) {
    err << "error: " << envelope.status().message() << "\n";
    return ExitCodeFor(envelope.status());
  }
  out << Render(*envelope, format);
  if (format != Format::kJson) {
    for (const std::string& w : envelope->warnings) err << "warning: " << w << "\n";
  }
  return kExitOk;
}

}  // namespace wdp::cli
