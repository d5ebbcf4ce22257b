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

#ifndef WDP_FORMAT_H_
#define WDP_FORMAT_H_

#include <string>

namespace wdp {

// Significant digits for every floating-point value written to JSON or CSV.
inline constexpr int kOutputDigits = 10;

// Rounds to `digits` significant decimal digits. The JSON writer prints the
// shortest round-trip form, so a rounded value serializes with at most
// `digits` digits. Non-finite values pass through.
double RoundToSignificant(double value, int digits = kOutputDigits);

// printf("%.<digits>g").
std::string FormatSignificant(double value, int digits = kOutputDigits);

}  // namespace wdp

#endif  // WDP_FORMAT_H_
