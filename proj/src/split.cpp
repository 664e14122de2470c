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

#include "trimat/split.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "trimat/error.hpp"
#include "trimat/rng.hpp"

namespace trimat {

namespace {

Dataset take(const Dataset& parent, const std::vector<std::size_t>& indices) {
  Dataset half;
  half.n_users = parent.n_users;
  half.n_items = parent.n_items;
  half.user_ids = parent.user_ids;
  half.item_ids = parent.item_ids;
  half.user_index_of = parent.user_index_of;
  half.item_index_of = parent.item_index_of;
  half.interactions.reserve(indices.size());
  half.r_min = std::numeric_limits<double>::infinity();
  half.r_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i : indices) {
    const Interaction& row = parent.interactions[i];
    half.interactions.push_back(row);
    half.r_min = std::min(half.r_min, row.rating);
    half.r_max = std::max(half.r_max, row.rating);
  }
  half.context_stats = compute_context_stats(half.interactions);
  return half;
}

}  // namespace

std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitSpec& spec) {
  if (ds.interactions.empty()) {
    throw EmptyDatasetError("cannot split an empty dataset");
  }
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw ConfigError("train fraction must be in (0, 1), got " +
                      std::to_string(spec.train_fraction));
  }
  const std::size_t n = ds.interactions.size();
  const auto n_train = static_cast<std::size_t>(
      std::llround(spec.train_fraction * static_cast<double>(n)));
  if (n_train == 0 || n_train == n) {
    throw DegenerateSplitError(
        "fraction " + std::to_string(spec.train_fraction) + " on " +
        std::to_string(n) + " interactions leaves an empty half");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  RngStream rng(spec.seed, "split");
  rng.shuffle(order);

  std::vector<std::size_t> train_idx(order.begin(),
                                     order.begin() + static_cast<long>(n_train));
  std::vector<std::size_t> test_idx(order.begin() + static_cast<long>(n_train),
                                    order.end());
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());
  return {take(ds, train_idx), take(ds, test_idx)};
}

}  // namespace trimat
