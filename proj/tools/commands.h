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

#ifndef WDP_TOOLS_COMMANDS_H_
#define WDP_TOOLS_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <string>

#include "absl/status/statusor.h"
#include "output.h"

namespace wdp::cli {

struct MechOptions {
  std::string kind;
  std::optional<double> lambda;
  std::optional<double> sigma;
  double sensitivity = 1.0;
  double mu = 1.0;
  std::string framework = "wdp";
  std::optional<double> alpha;
  std::optional<std::string> sweep_order;  // lo:hi:step
};

struct ConvertOptions {
  std::string from;
  std::optional<std::string> to;
  double epsilon = 0.0;
  std::optional<double> alpha;
  double sensitivity = 1.0;
  double mu = 1.0;
  std::optional<double> lipschitz;
  bool round_trip = false;
};

struct ComposeOptions {
  std::optional<std::string> sequential;
  std::optional<std::string> parallel;
  std::optional<std::string> advanced;
  std::optional<int> group;
  std::optional<double> epsilon;
  std::optional<std::string> mus;
  double mu = 1.0;
  double beta = 1.0;
};

struct AccountOptions {
  std::optional<std::string> losses_file;
  std::optional<std::string> gradients_file;
  std::optional<int> steps;
  std::optional<double> distance;
  std::optional<double> q;
  std::optional<double> sigma;
  std::optional<double> mu;
  std::optional<double> beta;
  std::optional<double> delta;
  std::optional<int> grad_dim;
  std::string policy = "min";
  size_t sample_pairs = 0;
  std::optional<double> epsilon;
  std::optional<std::string> save;
  uint64_t seed = 0;
};

struct OtOptions {
  std::optional<std::string> p;
  std::optional<std::string> q;
  double mu = 1.0;
  std::string method = "quantile";
  bool dual = false;
  std::optional<std::string> map;
  bool audit = false;
  std::string kind = "gaussian";
  std::optional<double> lambda;
  std::optional<double> sigma;
  double sensitivity = 1.0;
  size_t samples = 100000;
  uint64_t seed = 0;
};

struct SimulateOptions {
  uint64_t seed = 0;
  size_t steps = 50;
  size_t examples = 1000;
  double shape = 0.5;
  double scale = 1.0;
  double sigma = 0.2;
  double q = 0.01;
  double mu = 1.0;
  double beta = 1.0;
  double delta = 1e-5;
  std::string policy = "min";
  size_t sample_pairs = 0;
  std::optional<double> clip_quantile;
  int threads = 1;
  std::optional<std::string> out;
  std::optional<std::string> metadata;
};

absl::StatusOr<Envelope> RunMech(const MechOptions& o);
absl::StatusOr<Envelope> RunConvert(const ConvertOptions& o);
absl::StatusOr<Envelope> RunCompose(const ComposeOptions& o);
absl::StatusOr<Envelope> RunAccount(const AccountOptions& o);
absl::StatusOr<Envelope> RunOt(const OtOptions& o);
absl::StatusOr<Envelope> RunSimulate(const SimulateOptions& o);

}  // namespace wdp::cli

#endif  // WDP_TOOLS_COMMANDS_H_
