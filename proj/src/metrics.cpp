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

#include "trimat/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <unordered_set>

#include "trimat/error.hpp"

namespace trimat {
namespace {

// Seen pairs per user, for skipping during ranking.
std::vector<std::unordered_set<int>> seen_by_user(const Dataset& ds,
                                                  int n_users) {
  std::vector<std::unordered_set<int>> seen(n_users);
  for (const Interaction& row : ds.interactions) {
    if (row.user >= 0 && row.user < n_users) seen[row.user].insert(row.item);
  }
  return seen;
}

TopKLists top_k_impl(const Scorer& scorer, int n_users, int n_items, int k,
                     const std::vector<std::unordered_set<int>>* seen) {
  if (n_users < 1 || n_items < 1)
    throw ConfigError("top_k: need at least one user and one item");
  if (k < 1) throw ConfigError("top_k: k must be >= 1");

  TopKLists out;
  out.k = k;
  out.items.resize(n_users);
  std::vector<std::pair<double, int>> ranked;
  ranked.reserve(n_items);
  for (int u = 0; u < n_users; ++u) {
    ranked.clear();
    for (int i = 0; i < n_items; ++i) {
      if (seen != nullptr && (*seen)[u].count(i) > 0) continue;
      ranked.emplace_back(scorer(u, i), i);
    }
    const auto better = [](const std::pair<double, int>& a,
                           const std::pair<double, int>& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    };
    const std::size_t keep =
        std::min<std::size_t>(static_cast<std::size_t>(k), ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + keep, ranked.end(),
                      better);
    out.items[u].reserve(keep);
    for (std::size_t r = 0; r < keep; ++r)
      out.items[u].push_back(ranked[r].second);
  }
  return out;
}

}  // namespace

double mae(const std::vector<double>& predicted,
           const std::vector<double>& actual) {
  if (predicted.size() != actual.size())
    throw ConfigError("mae: series lengths differ");
  if (predicted.empty()) throw ConfigError("mae: empty series");
  double sum = 0.0;
  for (std::size_t i = 0; i < predicted.size(); ++i)
    sum += std::abs(predicted[i] - actual[i]);
  return sum / static_cast<double>(predicted.size());
}

TopKLists top_k(const Scorer& scorer, int n_users, int n_items, int k) {
  return top_k_impl(scorer, n_users, n_items, k, nullptr);
}

TopKLists top_k(const Scorer& scorer, int n_users, int n_items, int k,
                const Dataset& exclude) {
  const auto seen = seen_by_user(exclude, n_users);
  return top_k_impl(scorer, n_users, n_items, k, &seen);
}

std::vector<double> recommendation_counts(const TopKLists& lists,
                                          int n_items) {
  if (n_items < 1) throw ConfigError("recommendation_counts: n_items < 1");
  std::vector<double> counts(static_cast<std::size_t>(n_items), 0.0);
  for (const std::vector<int>& per_user : lists.items) {
    for (int item : per_user) {
      if (item < 0 || item >= n_items)
        throw ConfigError("recommendation_counts: item index out of range");
      counts[static_cast<std::size_t>(item)] += 1.0;
    }
  }
  return counts;
}

RankFrequency rank_frequency(const std::vector<double>& counts) {
  RankFrequency out;
  out.frequency = counts;
  std::sort(out.frequency.begin(), out.frequency.end(),
            std::greater<double>());

  // Positive frequencies form a prefix once sorted.
  std::size_t n_pos = 0;
  while (n_pos < out.frequency.size() && out.frequency[n_pos] > 0.0) ++n_pos;
  if (n_pos < 2)
    throw UndefinedSlopeError(
        "rank_frequency: need at least two positive frequencies");

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t r = 0; r < n_pos; ++r) {
    const double x = std::log(static_cast<double>(r + 1));
    const double y = std::log(out.frequency[r]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(n_pos);
  const double denom = n * sxx - sx * sx;
  out.slope = (n * sxy - sx * sy) / denom;
  out.intercept = (sy - out.slope * sx) / n;
  return out;
}

MatthewEffect degree_of_matthew_effect(
    const std::vector<double>& recommendation_freq,
    const std::vector<double>& popularity_freq) {
  MatthewEffect out;
  out.recommendation_slope = rank_frequency(recommendation_freq).slope;
  out.popularity_slope = rank_frequency(popularity_freq).slope;
  out.degree = out.recommendation_slope - out.popularity_slope;
  return out;
}

Scorer make_scorer(const ClassicModel& model) {
  return [&model](int user, int item) {
    return classic_score(model, user, item);
  };
}

Scorer make_scorer(const TriMatModel& model, const Dataset& train) {
  const int n_users = static_cast<int>(model.user_factors.rows());
  auto contexts = std::make_shared<std::vector<ContextVector>>(
      static_cast<std::size_t>(n_users), ContextVector::all_missing());
  for (const Interaction& row : train.interactions) {
    if (row.user >= 0 && row.user < n_users)
      (*contexts)[static_cast<std::size_t>(row.user)] = row.context;
  }
  return [&model, contexts](int user, int item) {
    const ContextVector& ctx =
        (*contexts)[static_cast<std::size_t>(user)];
    return trimat_score(model, user, item, &ctx,
                        OutOfRangePolicy::kClampToOne);
  };
}

}  // namespace trimat
