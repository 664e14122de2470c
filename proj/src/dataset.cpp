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

#include "trimat/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trimat/error.hpp"

namespace trimat {

ContextStats compute_context_stats(const std::vector<Interaction>& rows) {
  ContextStats stats = ContextStats::neutral();
  std::array<long, kNumContextFields> present{};
  std::array<int, kNumContextFields> max_code{};
  for (const Interaction& row : rows) {
    for (int f = 0; f < kNumContextFields; ++f) {
      if (row.context.missing[f]) continue;
      ++present[f];
      max_code[f] = std::max(max_code[f], row.context.code[f]);
    }
  }
  // Second pass: mean of code/max over present values.
  std::array<double, kNumContextFields> sum{};
  for (const Interaction& row : rows) {
    for (int f = 0; f < kNumContextFields; ++f) {
      if (row.context.missing[f]) continue;
      sum[f] += static_cast<double>(row.context.code[f]) /
                static_cast<double>(max_code[f]);
    }
  }
  for (int f = 0; f < kNumContextFields; ++f) {
    if (present[f] > 0) {
      stats.max_code[f] = max_code[f];
      stats.mean_norm[f] = sum[f] / static_cast<double>(present[f]);
    }
    // else: keep the neutral fallback (max 1, mean 0.5)
  }
  return stats;
}

Dataset dense_reindex(const std::vector<RawRecord>& records) {
  if (records.empty()) {
    throw EmptyDatasetError("no records to build a dataset from");
  }
  Dataset ds;
  ds.r_min = std::numeric_limits<double>::infinity();
  ds.r_max = -std::numeric_limits<double>::infinity();
  ds.interactions.reserve(records.size());
  for (const RawRecord& rec : records) {
    if (rec.user_id.empty() || rec.item_id.empty()) {
      throw DataError("record with empty user or item ID");
    }
    if (!std::isfinite(rec.rating) || rec.rating <= 0.0) {
      throw InvalidRatingError("non-positive rating " +
                               std::to_string(rec.rating) + " for user '" +
                               rec.user_id + "', item '" + rec.item_id +
                               "': ratings must be > 0");
    }
    auto [uit, u_new] =
        ds.user_index_of.try_emplace(rec.user_id, ds.n_users);
    if (u_new) {
      ds.user_ids.push_back(rec.user_id);
      ++ds.n_users;
    }
    auto [iit, i_new] =
        ds.item_index_of.try_emplace(rec.item_id, ds.n_items);
    if (i_new) {
      ds.item_ids.push_back(rec.item_id);
      ++ds.n_items;
    }
    ds.interactions.push_back(
        Interaction{uit->second, iit->second, rec.rating, rec.context});
    ds.r_min = std::min(ds.r_min, rec.rating);
    ds.r_max = std::max(ds.r_max, rec.rating);
  }
  ds.context_stats = compute_context_stats(ds.interactions);
  return ds;
}

std::vector<double> popularity_counts(const Dataset& ds) {
  std::vector<double> counts(static_cast<std::size_t>(ds.n_items), 0.0);
  for (const Interaction& row : ds.interactions) {
    counts[static_cast<std::size_t>(row.item)] += 1.0;
  }
  return counts;
}

}  // namespace trimat
