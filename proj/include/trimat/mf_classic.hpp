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
#include <string_view>
#include <vector>

#include "trimat/dataset.hpp"

namespace trimat {

// Two per-interaction losses for the rank-k baseline:
//   raw:        (r - u.v)^2
//   normalized: (r/r_max - u.v / (|u| |v|))^2
// The normalized form keeps both terms in comparable ranges; norms are
// floored at 1e-8 so the cosine never divides by zero.
enum class ClassicVariant { kRaw, kNormalized };

// "raw" / "normalized". The parser throws ConfigError on anything else.
std::string_view to_string(ClassicVariant variant);
ClassicVariant classic_variant_from_string(std::string_view name);

struct TrainConfig {
  double learning_rate = 1e-3;  // >= 0; 0 leaves parameters at init
  int epochs = 200;
  double init_low = 0.01;  // init entries iid uniform [init_low, init_high)
  double init_high = 0.1;
  std::uint64_t seed = 0;
  bool shuffle = true;  // reshuffle interaction order every epoch
};

struct ClassicModel {
  Eigen::MatrixXd user_factors;  // n_users x k
  Eigen::MatrixXd item_factors;  // n_items x k
  int k = 0;
  ClassicVariant variant = ClassicVariant::kRaw;
  double r_min = 0.0;
  double r_max = 0.0;
  std::vector<double> epoch_loss;  // mean squared error after each epoch
};

// Plain SGD, one pass per epoch over (optionally shuffled) interactions.
// Both factor updates in a step use the pre-update values. Non-finite
// parameters abort with a divergence error naming the 1-based epoch.
ClassicModel train_classic(const Dataset& train, int k,
                           const TrainConfig& cfg, ClassicVariant variant);

// Predicted rating, clipped to the training rating range. The normalized
// variant rescales its cosine score by r_max.
double predict_classic(const ClassicModel& model, int user, int item);

// Score before rescaling/clipping; what ranking should be based on.
double classic_score(const ClassicModel& model, int user, int item);

}  // namespace trimat
