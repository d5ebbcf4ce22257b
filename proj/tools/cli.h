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

#ifndef WDP_TOOLS_CLI_H_
#define WDP_TOOLS_CLI_H_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "absl/status/status.h"

namespace wdp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;

// Seed used by stochastic commands when neither --seed nor WDP_SEED is set.
inline constexpr uint64_t kDefaultSeed = 7;

// Validation problems map to kExitValidation, everything else to
// kExitNumeric.
int ExitCodeFor(const absl::Status& status);

// Runs one invocation. `args` excludes the program name; `env_seed` is the
// value of WDP_SEED, which takes precedence over --seed.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err, const std::optional<std::string>& env_seed);

}  // namespace wdp::cli

#endif  // WDP_TOOLS_CLI_H_
