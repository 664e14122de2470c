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

#include <string>
#include <unordered_map>
#include <vector>

#include "trimat/context.hpp"

namespace trimat {

// One (user, item, rating, context) event with dense 0-based indices.
struct Interaction {
  int user = 0;
  int item = 0;
  double rating = 0.0;
  ContextVector context;
};

// A raw record before reindexing: original string IDs, raw rating.
struct RawRecord {
  std::string user_id;
  std::string item_id;
  double rating = 0.0;
  ContextVector context;
};

// Immutable after construction. Ratings are strictly positive; user/item
// maps are bijections between original IDs and dense indices.
struct Dataset {
  std::vector<Interaction> interactions;
  int n_users = 0;
  int n_items = 0;
  double r_min = 0.0;
  double r_max = 0.0;
  ContextStats context_stats = ContextStats::neutral();
  std::vector<std::string> user_ids;  // dense index -> original ID
  std::vector<std::string> item_ids;
  std::unordered_map<std::string, int> user_index_of;  // original ID -> dense
  std::unordered_map<std::string, int> item_index_of;

  std::size_t size() const { return interactions.size(); }
};

// Maps users and items to contiguous 0-based indices in first-appearance
// order, derives the rating range and per-field context statistics.
// Non-positive or non-finite ratings are rejected: the normalized losses
// divide by r_max and need positive ratings.
Dataset dense_reindex(const std::vector<RawRecord>& records);

// Recomputes max_code / mean_norm over the given interactions.
ContextStats compute_context_stats(const std::vector<Interaction>& rows);

// Count of each item's training occurrences, indexed by dense item index.
std::vector<double> popularity_counts(const Dataset& ds);

}  // namespace trimat
