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

#include "trimat/synth.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <vector>

#include "trimat/error.hpp"
#include "trimat/rng.hpp"

namespace trimat {

const std::array<int, kNumContextFields> kSynthContextMaxima = {4, 3, 5,
                                                                4, 2, 7};

PlantedTriMat make_planted_trimat(int n_users, int n_items,
                                  std::uint64_t seed) {
  PlantedTriMat planted;
  planted.user_factors.resize(n_users, 3);
  planted.item_factors.resize(n_items, 2);
  RngStream rng(seed, "synth-planted");
  for (int i = 0; i < n_users; ++i)
    for (int a = 0; a < 3; ++a)
      planted.user_factors(i, a) = rng.uniform(0.35, 0.55);
  for (int j = 0; j < n_items; ++j)
    for (int b = 0; b < 2; ++b)
      planted.item_factors(j, b) = rng.uniform(0.35, 0.55);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 2; ++b)
      planted.context(a, b) = rng.uniform(0.35, 0.55);
  return planted;
}

Dataset synth_zipf(const SynthSpec& spec) {
  if (spec.n_users < 1 || spec.n_items < 1 || spec.n_interactions < 1) {
    throw ConfigError("synthetic counts must all be >= 1");
  }
  if (spec.zipf_exponent < 0.0) {
    throw ConfigError("zipf exponent must be >= 0, got " +
                      std::to_string(spec.zipf_exponent));
  }
  if (spec.n_interactions < spec.n_users) {
    std::cerr << "note: fewer interactions (" << spec.n_interactions
              << ") than users (" << spec.n_users
              << "); some users will have no data\n";
  }

  // Exact CDF over item ranks; rank r (1-based) maps to item index r-1, so
  // item 0 is the most popular.
  std::vector<double> cdf(static_cast<std::size_t>(spec.n_items));
  double acc = 0.0;
  for (int r = 1; r <= spec.n_items; ++r) {
    acc += std::pow(static_cast<double>(r), -spec.zipf_exponent);
    cdf[static_cast<std::size_t>(r - 1)] = acc;
  }
  for (double& c : cdf) c /= acc;

  std::optional<PlantedTriMat> planted;
  if (spec.planted_seed) {
    planted =
        make_planted_trimat(spec.n_users, spec.n_items, *spec.planted_seed);
  }

  Dataset ds;
  ds.n_users = spec.n_users;
  ds.n_items = spec.n_items;
  ds.user_ids.reserve(static_cast<std::size_t>(spec.n_users));
  for (int u = 0; u < spec.n_users; ++u) {
    ds.user_ids.push_back("u" + std::to_string(u));
    ds.user_index_of.emplace(ds.user_ids.back(), u);
  }
  ds.item_ids.reserve(static_cast<std::size_t>(spec.n_items));
  for (int i = 0; i < spec.n_items; ++i) {
    ds.item_ids.push_back("i" + std::to_string(i));
    ds.item_index_of.emplace(ds.item_ids.back(), i);
  }

  RngStream rng(spec.seed, "synth");
  ds.interactions.reserve(static_cast<std::size_t>(spec.n_interactions));
  ds.r_min = std::numeric_limits<double>::infinity();
  ds.r_max = -std::numeric_limits<double>::infinity();
  for (long k = 0; k < spec.n_interactions; ++k) {
    Interaction row;
    row.user = static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.n_users)));
    const double u = rng.next_double();
    row.item = static_cast<int>(
        std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (row.item >= spec.n_items) row.item = spec.n_items - 1;
    std::array<int, kNumContextFields> codes{};
    for (int f = 0; f < kNumContextFields; ++f) {
      codes[f] = 1 + static_cast<int>(rng.below(
                         static_cast<std::uint64_t>(kSynthContextMaxima[f])));
    }
    row.context = ContextVector::from_raw(codes);
    if (planted) {
      row.rating = 5.0 * planted->score(row.user, row.item);
    } else {
      row.rating = static_cast<double>(1 + rng.below(5));
    }
    ds.r_min = std::min(ds.r_min, row.rating);
    ds.r_max = std::max(ds.r_max, row.rating);
    ds.interactions.push_back(row);
  }
  ds.context_stats = compute_context_stats(ds.interactions);
  return ds;
}

}  // namespace trimat
