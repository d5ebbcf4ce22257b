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

#include "output.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "wdp/format.h"

namespace wdp::cli {
namespace {

std::string CellText(const Json& cell, int digits) {
  if (cell.is_null()) return "";
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_number_float()) return FormatSignificant(cell.get<double>(), digits);
  return cell.dump();
}

std::string CsvEscape(std::string text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Flat key/value view of a results object; nested objects use dotted keys.
void Flatten(const Json& value, const std::string& prefix,
             std::vector<std::pair<std::string, Json>>& out) {
  for (const auto& [key, item] : value.items()) {
    const std::string name = prefix.empty() ? key : absl::StrCat(prefix, ".", key);
    if (item.is_object()) {
      Flatten(item, name, out);
    } else if (!item.is_array()) {
      out.emplace_back(name, item);
    }
  }
}

Table AsTable(const Envelope& envelope) {
  if (envelope.table.has_value()) return *envelope.table;
  std::vector<std::pair<std::string, Json>> flat;
  Flatten(envelope.results, "", flat);
  Table table;
  table.rows.emplace_back();
  for (auto& [key, value] : flat) {
    table.columns.push_back(key);
    table.rows.back().push_back(value);
  }
  return table;
}

}  // namespace

absl::StatusOr<Format> ParseFormat(const std::string& text) {
  if (text == "json") return Format::kJson;
  if (text == "csv") return Format::kCsv;
  if (text == "table") return Format::kTable;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown format '", text, "'; expected json, csv or table"));
}

Json Number(double value) {
  if (std::isnan(value)) return nullptr;
  if (value == std::numeric_limits<double>::infinity()) return "unbounded";
  if (value == -std::numeric_limits<double>::infinity()) return "-unbounded";
  return RoundToSignificant(value);
}

std::string RenderJson(const Envelope& envelope) {
  Json doc = Json::object();
  doc["command"] = envelope.command;
  doc["config"] = envelope.config;
  doc["results"] = envelope.results;
  if (envelope.table.has_value()) {
    Json rows = Json::array();
    for (const auto& row : envelope.table->rows) {
      Json item = Json::object();
      for (size_t i = 0; i < row.size(); ++i) item[envelope.table->columns[i]] = row[i];
      rows.push_back(std::move(item));
    }
    doc["results"]["rows"] = std::move(rows);
  }
  doc["warnings"] = envelope.warnings;
  return doc.dump(2) + "\n";
}

std::string RenderCsv(const Envelope& envelope) {
  if (envelope.csv.has_value()) return *envelope.csv;
  const Table table = AsTable(envelope);
  std::string out = absl::StrJoin(table.columns, ",") + "\n";
  for (const auto& row : table.rows) {
    std::vector<std::string> cells;
    for (const Json& cell : row) cells.push_back(CsvEscape(CellText(cell, kOutputDigits)));
    absl::StrAppend(&out, absl::StrJoin(cells, ","), "\n");
  }
  return out;
}

namespace {

std::string AlignedTable(const Table& table, int digits) {
  std::vector<std::vector<std::string>> cells;
  std::vector<size_t> width(table.columns.size(), 0);
  cells.push_back(table.columns);
  for (const auto& row : table.rows) {
    cells.emplace_back();
    for (const Json& cell : row) cells.back().push_back(CellText(cell, digits));
  }
  for (const auto& row : cells) {
    for (size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (const auto& row : cells) {
    std::string line;
    for (size_t i = 0; i < row.size(); ++i) {
      if (i > 0) line += "  ";
      line += row[i];
      if (i + 1 < row.size()) line.append(width[i] - row[i].size(), ' ');
    }
    absl::StrAppend(&out, line, "\n");
  }
  return out;
}

}  // namespace

std::string RenderTable(const Envelope& envelope) {
  constexpr int kTableDigits = 4;
  if (!envelope.table.has_value()) return AlignedTable(AsTable(envelope), kTableDigits);
  std::vector<std::pair<std::string, Json>> flat;
  Flatten(envelope.results, "", flat);
  Table summary;
  for (auto& [key, value] : flat) summary.rows.push_back({key, value});
  summary.columns = {"result", "value"};
  return AlignedTable(summary, kTableDigits) + "\n" +
         AlignedTable(*envelope.table, kTableDigits);
}

std::string Render(const Envelope& envelope, Format format) {
  switch (format) {
    case Format::kJson:
      return RenderJson(envelope);
    case Format::kCsv:
      return RenderCsv(envelope);
    case Format::kTable:
      return RenderTable(envelope);
  }
  return "";
}

}  // namespace wdp::cli
