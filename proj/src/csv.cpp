// Copyright 2026 The TriMat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trimat/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "trimat/error.hpp"

namespace trimat {

ColumnMapping ColumnMapping::ldos_comoda() {
  ColumnMapping m;
  m.user = ColumnRef::by_name("userID");
  m.item = ColumnRef::by_name("itemID");
  m.rating = ColumnRef::by_name("rating");
  m.context = {ColumnRef::by_name("location"), ColumnRef::by_name("mood"),
               ColumnRef::by_name("weather"),  ColumnRef::by_name("season"),
               ColumnRef::by_name("daytype"),  ColumnRef::by_name("endEmo")};
  return m;
}

ColumnMapping ColumnMapping::positional(char delimiter, bool header) {
  ColumnMapping m;
  m.user = ColumnRef::by_position(0);
  m.item = ColumnRef::by_position(1);
  m.rating = ColumnRef::by_position(2);
  for (int f = 0; f < kNumContextFields; ++f) {
    m.context[f] = ColumnRef::by_position(3 + f);
  }
  m.delimiter = delimiter;
  m.has_header = header;
  return m;
}

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, delim)) cells.push_back(cell);
  if (!line.empty() && line.back() == delim) cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Resolves a ColumnRef against the header (or the first row's width).
int resolve(const ColumnRef& ref, const std::vector<std::string>& header,
            bool has_header, int width, const std::string& role) {
  if (ref.is_named()) {
    if (!has_header) {
      throw SchemaError("column '" + ref.name + "' for role '" + role +
                        "' is mapped by name but the file has no header");
    }
    for (int i = 0; i < static_cast<int>(header.size()); ++i) {
      if (trim(header[i]) == ref.name) return i;
    }
    throw SchemaError("missing column '" + ref.name + "' for role '" + role +
                      "'");
  }
  if (ref.position < 0 || ref.position >= width) {
    throw SchemaError("column position " + std::to_string(ref.position) +
                      " for role '" + role + "' is out of range (file has " +
                      std::to_string(width) + " columns)");
  }
  return ref.position;
}

double parse_rating(const std::string& raw, long row) {
  const std::string s = trim(raw);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("unparseable rating '" + s + "'", row);
  }
  if (!std::isfinite(value)) {
    throw ParseError("non-finite rating '" + s + "'", row);
  }
  return value;
}

int parse_context_code(const std::string& raw, int field, long row) {
  const std::string s = trim(raw);
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError("unparseable " + std::string(kContextFieldNames[field]) +
                         " code '" + s + "'",
                     row);
  }
  if (value != -1 && value < 1) {
    throw ParseError("invalid " + std::string(kContextFieldNames[field]) +
                         " code " + std::to_string(value) +
                         " (expected 1-based code or -1 for missing)",
                     row);
  }
  return value;
}

}  // namespace

Dataset load_csv(const std::string& path, const ColumnMapping& mapping) {
  std::ifstream file(path);
  if (!file.is_open()) {
    throw DataError("cannot open '" + path + "'");
  }

  std::string line;
  long row = 0;
  std::vector<std::string> header;
  if (mapping.has_header) {
    if (!std::getline(file, line)) {
      throw EmptyDatasetError("'" + path + "' is empty");
    }
    ++row;
    header = split_line(line, mapping.delimiter);
  }

  std::vector<RawRecord> records;
  bool resolved = false;
  int col_user = -1, col_item = -1, col_rating = -1;
  std::array<int, kNumContextFields> col_ctx{};

  while (std::getline(file, line)) {
    ++row;
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_line(line, mapping.delimiter);
    if (!resolved) {
      const int width = mapping.has_header ? static_cast<int>(header.size())
                                           : static_cast<int>(cells.size());
      col_user = resolve(mapping.user, header, mapping.has_header, width,
                         "user");
      col_item = resolve(mapping.item, header, mapping.has_header, width,
                         "item");
      col_rating = resolve(mapping.rating, header, mapping.has_header, width,
                           "rating");
      std::set<int> distinct{col_user, col_item, col_rating};
      for (int f = 0; f < kNumContextFields; ++f) {
        col_ctx[f] = resolve(mapping.context[f], header, mapping.has_header,
                             width, std::string(kContextFieldNames[f]));
        distinct.insert(col_ctx[f]);
      }
      if (distinct.size() != 3 + kNumContextFields) {
        throw SchemaError("column mapping assigns two roles to one column");
      }
      resolved = true;
    }
    const int width = static_cast<int>(cells.size());
    auto cell = [&](int col, const std::string& role) -> const std::string& {
      if (col >= width) {
        throw ParseError("row too short: no value for '" + role + "'", row);
      }
      return cells[static_cast<std::size_t>(col)];
    };

    RawRecord rec;
    rec.user_id = trim(cell(col_user, "user"));
    rec.item_id = trim(cell(col_item, "item"));
    if (rec.user_id.empty() || rec.item_id.empty()) {
      throw ParseError("empty user or item ID", row);
    }
    rec.rating = parse_rating(cell(col_rating, "rating"), row);
    if (rec.rating <= 0.0) {
      throw InvalidRatingError("non-positive rating " +
                               std::to_string(rec.rating) + " (row " +
                               std::to_string(row) + ")");
    }
    std::array<int, kNumContextFields> raw{};
    for (int f = 0; f < kNumContextFields; ++f) {
      raw[f] = parse_context_code(
          cell(col_ctx[f], std::string(kContextFieldNames[f])), f, row);
    }
    rec.context = ContextVector::from_raw(raw);
    records.push_back(std::move(rec));
  }

  if (records.empty()) {
    throw EmptyDatasetError("'" + path + "' has no data rows");
  }
  return dense_reindex(records);
}

}  // namespace trimat
