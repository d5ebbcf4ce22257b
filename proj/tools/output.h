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

#ifndef WDP_TOOLS_OUTPUT_H_
#define WDP_TOOLS_OUTPUT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace wdp::cli {

using Json = nlohmann::ordered_json;

enum class Format { kJson, kCsv, kTable };

absl::StatusOr<Format> ParseFormat(const std::string& text);

// Rounded to kOutputDigits significant digits. +inf prints as "unbounded",
// NaN as null.
Json Number(double value);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

// Every command prints the same four top-level fields:
//   {"command", "config", "results", "warnings"}.
// Tabular output appears under results.rows as one object per row.
struct Envelope {
  std::string command;
  Json config = Json::object();
  Json results = Json::object();
  std::optional<Table> table;
  std::vector<std::string> warnings;
  // Used verbatim for --format csv when set.
  std::optional<std::string> csv;
};

std::string RenderJson(const Envelope& envelope);
std::string RenderCsv(const Envelope& envelope);
std::string RenderTable(const Envelope& envelope);
std::string Render(const Envelope& envelope, Format format);

}  // namespace wdp::cli

#endif  // WDP_TOOLS_OUTPUT_H_
