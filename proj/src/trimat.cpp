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

#include "trimat/trimat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "trimat/error.hpp"
#include "trimat/rng.hpp"

namespace trimat {

std::string_view to_string(ContextMode mode) {
  return mode == ContextMode::kGlobal ? "global" : "per-interaction";
}

ContextMode context_mode_from_string(std::string_view name) {
  if (name == "global") return ContextMode::kGlobal;
  if (name == "per-interaction") return ContextMode::kPerInteraction;
  throw ConfigError("unknown context mode '" + std::string(name) +
                    "' (expected global or per-interaction)");
}

std::string_view to_string(RatingScaling scaling) {
  return scaling == RatingScaling::kScaled ? "scaled" : "raw";
}

RatingScaling rating_scaling_from_string(std::string_view name) {
  if (name == "scaled") return RatingScaling::kScaled;
  if (name == "raw") return RatingScaling::kRaw;
  throw ConfigError("unknown rating scaling '" + std::string(name) +
                    "' (expected scaled or raw)");
}

namespace {

double score_with(const TriMatModel& m, int user, int item,
                  const ContextMatrix& c) {
  const Eigen::Vector3d u = m.user_factors.row(user).transpose();
  const Eigen::Vector2d v = m.item_factors.row(item).transpose();
  return u.dot(c * v);
}

// Loss over the training rows with the model's current parameters, in
// target space (t = r / r_max under scaled mode).
double train_loss(const TriMatModel& m, const Dataset& ds,
                  const std::vector<double>& targets) {
  double sum = 0.0;
  for (std::size_t ix = 0; ix < ds.interactions.size(); ++ix) {
    const Interaction& row = ds.interactions[ix];
    const ContextMatrix& c =
        m.mode == ContextMode::kGlobal
            ? m.context_global
            : m.context_per.at({row.user, row.item});
    const double e = targets[ix] - score_with(m, row.user, row.item, c);
    sum += e * e;
  }
  return sum / static_cast<double>(ds.interactions.size());
}

}  // namespace

TriMatModel train_trimat(const Dataset& train, const TrainConfig& cfg,
                         ContextMode mode, RatingScaling scaling,
                         MissingPolicy missing) {
  if (train.interactions.empty()) {
    throw EmptyDatasetError("cannot train on an empty dataset");
  }
  if (cfg.learning_rate < 0.0) throw ConfigError("learning rate must be >= 0");
  if (cfg.epochs < 1) throw ConfigError("epochs must be >= 1");
  if (!(cfg.init_low < cfg.init_high)) {
    throw ConfigError("init_low must be < init_high");
  }

  TriMatModel model;
  model.mode = mode;
  model.scaling = scaling;
  model.context_stats = train.context_stats;
  model.missing_policy = missing;
  model.r_min = train.r_min;
  model.r_max = train.r_max;
  model.user_factors.resize(train.n_users, 3);
  model.item_factors.resize(train.n_items, 2);

  RngStream init_u(cfg.seed, "init-U");
  for (int i = 0; i < train.n_users; ++i)
    for (int a = 0; a < 3; ++a)
      model.user_factors(i, a) = init_u.uniform(cfg.init_low, cfg.init_high);
  RngStream init_v(cfg.seed, "init-V");
  for (int j = 0; j < train.n_items; ++j)
    for (int b = 0; b < 2; ++b)
      model.item_factors(j, b) = init_v.uniform(cfg.init_low, cfg.init_high);

  // C starts as a constant built from context. Training rows cannot exceed
  // the training maxima, so the error range policy never fires here.
  if (mode == ContextMode::kGlobal) {
    ContextMatrix sum = ContextMatrix::Zero();
    for (const Interaction& row : train.interactions) {
      sum += build_context_matrix(row.context, model.context_stats, missing,
                                  OutOfRangePolicy::kError);
    }
    model.context_global =
        sum / static_cast<double>(train.interactions.size());
  } else {
    for (const Interaction& row : train.interactions) {
      auto key = std::make_pair(row.user, row.item);
      if (!model.context_per.count(key)) {
        model.context_per.emplace(
            key, build_context_matrix(row.context, model.context_stats,
                                      missing, OutOfRangePolicy::kError));
      }
    }
  }

  std::vector<double> targets(train.interactions.size());
  for (std::size_t ix = 0; ix < targets.size(); ++ix) {
    const double r = train.interactions[ix].rating;
    targets[ix] = scaling == RatingScaling::kScaled ? r / model.r_max : r;
  }

  std::vector<std::size_t> order(train.interactions.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  RngStream shuffle_rng(cfg.seed, "shuffle");

  const double lr2 = 2.0 * cfg.learning_rate;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    if (cfg.shuffle) shuffle_rng.shuffle(order);
    for (std::size_t ix : order) {
      const Interaction& row = train.interactions[ix];
      ContextMatrix& c = mode == ContextMode::kGlobal
                             ? model.context_global
                             : model.context_per.at({row.user, row.item});
      const Eigen::Vector3d u = model.user_factors.row(row.user).transpose();
      const Eigen::Vector2d v = model.item_factors.row(row.item).transpose();
      const double e = targets[ix] - u.dot(c * v);
      const double g = lr2 * e;
      model.user_factors.row(row.user) += (g * (c * v)).transpose();
      model.item_factors.row(row.item) += (g * (c.transpose() * u)).transpose();
      c += g * (u * v.transpose());
    }
    const double loss = train_loss(model, train, targets);
    if (!std::isfinite(loss) || !model.user_factors.allFinite() ||
        !model.item_factors.allFinite()) {
      throw DivergenceError("training diverged", epoch);
    }
    model.epoch_loss.push_back(loss);
  }
  return model;
}

double trimat_score(const TriMatModel& model, int user, int item,
                    const ContextVector* ctx, OutOfRangePolicy range_policy) {
  if (user < 0 || user >= model.user_factors.rows() || item < 0 ||
      item >= model.item_factors.rows()) {
    throw Error("prediction index out of range");
  }
  if (model.mode == ContextMode::kGlobal) {
    return score_with(model, user, item, model.context_global);
  }
  auto it = model.context_per.find({user, item});
  if (it != model.context_per.end()) {
    return score_with(model, user, item, it->second);
  }
  if (ctx == nullptr) {
    throw MissingContextError(
        "per-interaction prediction on unseen pair (" + std::to_string(user) +
        ", " + std::to_string(item) + ") requires a context");
  }
  const ContextMatrix c = build_context_matrix(
      *ctx, model.context_stats, model.missing_policy, range_policy);
  return score_with(model, user, item, c);
}

double predict_trimat(const TriMatModel& model, int user, int item,
                      const ContextVector* ctx,
                      OutOfRangePolicy range_policy) {
  double score = trimat_score(model, user, item, ctx, range_policy);
  if (model.scaling == RatingScaling::kScaled) {
    score *= model.r_max;
  }
  return std::clamp(score, model.r_min, model.r_max);
}

FootprintReport footprint(long long n_users, long long n_items,
                          int baseline_k, int element_bytes) {
  if (n_users < 1 || n_items < 1 || baseline_k < 1 || element_bytes < 1) {
    throw ConfigError("footprint arguments must all be >= 1");
  }
  FootprintReport report;
  report.trimat_params = 3 * n_users + 2 * n_items + 6;
  report.classic_params = static_cast<long long>(baseline_k) *
                          (n_users + n_items);
  report.ratio = static_cast<double>(report.trimat_params) /
                 static_cast<double>(report.classic_params);
  report.element_bytes = element_bytes;
  report.trimat_bytes = report.trimat_params * element_bytes;
  report.classic_bytes = report.classic_params * element_bytes;
  return report;
}

}  // namespace trimat
