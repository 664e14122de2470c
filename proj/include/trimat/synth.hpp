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

#include <Eigen/Dense>
#include <cstdint>
#include <optional>

#include "trimat/dataset.hpp"

namespace trimat {

// Ground-truth tri-factor parameters behind a noiseless synthetic dataset.
// Entries are drawn uniform in [0.35, 0.55], which keeps every score
// u' * C * v inside (0.25, 1) so that ratings = 5 * score land in (1, 5).
struct PlantedTriMat {
  Eigen::Matrix<double, Eigen::Dynamic, 3> user_factors;
  Eigen::Matrix<double, Eigen::Dynamic, 2> item_factors;
  Eigen::Matrix<double, 3, 2> context;

  double score(int user, int item) const {
    const Eigen::Vector3d u = user_factors.row(user).transpose();
    const Eigen::Vector2d v = item_factors.row(item).transpose();
    return u.dot(context * v);
  }
};

PlantedTriMat make_planted_trimat(int n_users, int n_items,
                                  std::uint64_t seed);

// Synthetic dataset: item popularity follows rank^(-exponent), users are
// uniform, context codes are uniform over small fixed ranges. When a planted
// seed is given, ratings are the noiseless planted scores scaled onto the
// 1..5 rating scale; otherwise they are uniform integers in {1..5}.
struct SynthSpec {
  int n_users = 0;
  int n_items = 0;
  long n_interactions = 0;
  double zipf_exponent = 1.0;  // >= 0; 0 means uniform items
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> planted_seed;
};

// The per-field code ranges used by the generator (codes 1..max).
extern const std::array<int, kNumContextFields> kSynthContextMaxima;

Dataset synth_zipf(const SynthSpec& spec);

}  // namespace trimat
