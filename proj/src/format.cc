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

#include "wdp/format.h"

#include <cmath>
#include <cstdlib>

#include "absl/strings/str_format.h"

namespace wdp {

double RoundToSignificant(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  const std::string text = absl::StrFormat("%.*g", digits, value);
  return std::strtod(text.c_str(), nullptr);
}

std::string FormatSignificant(double value, int digits) {
  return absl::StrFormat("%.*g", digits, value);
}

}  // namespace wdp
