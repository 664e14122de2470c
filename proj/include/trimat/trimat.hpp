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
#include <map>
#include <string_view>
#include <utility>
#include <vector>

#include "trimat/dataset.hpp"
#include "trimat/mf_classic.hpp"

namespace trimat {

// Tri-factor model: rating_ij ~ u_i' * C * v_j with a 3x2 inner matrix C
// derived from context. The factor widths are pinned by C's shape: user
// rows live in R^3, item rows in R^2.
//
// Context modes:
//   global:          one shared C, initialized to the mean context matrix
//                    of the training split, updated on every SGD step.
//   per_interaction: each training (user, item) pair owns a C initialized
//                    from that pair's context; predictions on unseen pairs
//                    build C from a caller-supplied context.
enum class ContextMode { kGlobal, kPerInteraction };

// Targets for SGD: scaled fits r / r_max (keeps targets in (0, 1], same
// range as the context entries), raw fits r directly.
enum class RatingScaling { kScaled, kRaw };

// "global" / "per-interaction" and "scaled" / "raw". The parsers throw
// ConfigError on anything else.
std::string_view to_string(ContextMode mode);
ContextMode context_mode_from_string(std::string_view name);
std::string_view to_string(RatingScaling scaling);
RatingScaling rating_scaling_from_string(std::string_view name);

struct TriMatModel {
  Eigen::Matrix<double, Eigen::Dynamic, 3> user_factors;
  Eigen::Matrix<double, Eigen::Dynamic, 2> item_factors;
  ContextMode mode = ContextMode::kGlobal;
  RatingScaling scaling = RatingScaling::kScaled;
  ContextMatrix context_global = ContextMatrix::Zero();
  std::map<std::pair<int, int>, ContextMatrix> context_per;
  ContextStats context_stats = ContextStats::neutral();  // training split
  MissingPolicy missing_policy = MissingPolicy::kFieldMean;
  double r_min = 0.0;
  double r_max = 0.0;
  std::vector<double> epoch_loss;  // mean squared error in target space
};

// SGD on the per-interaction squared error e = t - u'Cv:
//   u += 2 lr e (C v),  v += 2 lr e (C' u),  C += 2 lr e (u v')
// all three computed from the pre-update values. C starts as a constant
// built from context and is trained together with U and V.
TriMatModel train_trimat(const Dataset& train, const TrainConfig& cfg,
                         ContextMode mode,
                         RatingScaling scaling = RatingScaling::kScaled,
                         MissingPolicy missing = MissingPolicy::kFieldMean);

// Raw model score u' * C * v. In per-interaction mode an unseen pair needs
// ctx (the range policy governs codes above the training maxima); global
// mode ignores ctx entirely.
double trimat_score(
    const TriMatModel& model, int user, int item,
    const ContextVector* ctx = nullptr,
    OutOfRangePolicy range_policy = OutOfRangePolicy::kClampToOne);

// Predicted rating: the score (rescaled by r_max in scaled mode) clipped to
// the training rating range.
double predict_trimat(
    const TriMatModel& model, int user, int item,
    const ContextVector* ctx = nullptr,
    OutOfRangePolicy range_policy = OutOfRangePolicy::kClampToOne);

// Trainable-parameter accounting against the rank-k baseline.
struct FootprintReport {
  long long trimat_params = 0;   // 3n + 2m + 6 (global mode)
  long long classic_params = 0;  // k (n + m)
  double ratio = 0.0;            // trimat / classic
  int element_bytes = 8;
  long long trimat_bytes = 0;
  long long classic_bytes = 0;
};

FootprintReport footprint(long long n_users, long long n_items,
                          int baseline_k, int element_bytes = 8);

}  // namespace trimat
