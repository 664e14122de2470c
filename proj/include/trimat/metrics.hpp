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

#include <functional>
#include <vector>

#include "trimat/dataset.hpp"
#include "trimat/mf_classic.hpp"
#include "trimat/trimat.hpp"

namespace trimat {

// Mean absolute error between two equally sized, non-empty series.
double mae(const std::vector<double>& predicted,
           const std::vector<double>& actual);

// Anything that can rank items for a user. Scores are compared, never
// interpreted as ratings, so scorers should hand out raw (unclipped) model
// scores; clipping to the rating range would collapse ties at the bounds.
using Scorer = std::function<double(int user, int item)>;

struct TopKLists {
  int k = 0;
  // items[u] holds user u's recommended items, best first. Lists can be
  // shorter than k when there are not enough candidate items.
  std::vector<std::vector<int>> items;
};

// Ranks every item for every user and keeps the top k per user. Ties are
// broken toward the smaller item index so results are deterministic.
TopKLists top_k(const Scorer& scorer, int n_users, int n_items, int k);

// Same, but items a user already interacted with in `exclude` are skipped.
TopKLists top_k(const Scorer& scorer, int n_users, int n_items, int k,
                const Dataset& exclude);

// How many recommendation slots each item occupies across all users.
std::vector<double> recommendation_counts(const TopKLists& lists, int n_items);

// Log-log rank/frequency fit. Frequencies are sorted descending and the line
// ln(frequency) = slope * ln(rank) + intercept is fit by ordinary least
// squares over the positive entries (ranks start at 1). A strongly negative
// slope means the mass is concentrated on the head of the ranking.
struct RankFrequency {
  std::vector<double> frequency;  // sorted descending, zeros included
  double slope = 0.0;
  double intercept = 0.0;
};

// Throws UndefinedSlopeError when fewer than two frequencies are positive.
RankFrequency rank_frequency(const std::vector<double>& counts);

// The Matthew effect of a recommender, measured as the gap between how
// concentrated its recommendations are and how concentrated the underlying
// consumption already was. degree < 0 means the recommender spreads
// attention across a longer tail than the data it was trained on.
struct MatthewEffect {
  double recommendation_slope = 0.0;
  double popularity_slope = 0.0;
  double degree = 0.0;  // recommendation_slope - popularity_slope
};

MatthewEffect degree_of_matthew_effect(
    const std::vector<double>& recommendation_freq,
    const std::vector<double>& popularity_freq);

// Ranking adapters. The returned scorer keeps a reference to the model, so
// the model must outlive it.
Scorer make_scorer(const ClassicModel& model);

// Context-aware models need a context to score unseen (user, item) pairs.
// Each user is scored under their most recent training context; users absent
// from `train` fall back to an all-missing context filled by the model's
// missing-value policy. Out-of-range codes are clamped, as at prediction.
Scorer make_scorer(const TriMatModel& model, const Dataset& train);

}  // namespace trimat
