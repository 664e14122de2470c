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

#pragma once

#include <array>
#include <string>

#include "trimat/dataset.hpp"

namespace trimat {

// A column is addressed either by header name or by 0-based position.
struct ColumnRef {
  std::string name;    // non-empty => by name (requires a header row)
  int position = -1;   // >= 0 => by position

  static ColumnRef by_name(std::string n) { return {std::move(n), -1}; }
  static ColumnRef by_position(int p) { return {{}, p}; }
  bool is_named() const { return !name.empty(); }
};

// Maps the nine roles (user, item, rating, six context fields) onto columns
// of a delimited text file. All nine must resolve to distinct columns.
struct ColumnMapping {
  ColumnRef user;
  ColumnRef item;
  ColumnRef rating;
  std::array<ColumnRef, kNumContextFields> context;
  char delimiter = ',';
  bool has_header = true;

  // The LDOS-CoMoDa header names. The file carries twelve context columns;
  // only the six that feed the context matrix are mapped, the rest ignored.
  static ColumnMapping ldos_comoda();

  // Roles at positions 0..8 in file order: user, item, rating, location,
  // mood, weather, season, daytype, end_emotion. The layout written by the
  // synthetic generator.
  static ColumnMapping positional(char delimiter = ',', bool header = true);
};

// Loads a delimited file into a reindexed Dataset. Raw context code -1
// becomes a missing flag. Unparseable cells fail with the 1-based physical
// line number. A file with no data rows is an error.
Dataset load_csv(const std::string& path, const ColumnMapping& mapping);

}  // namespace trimat
