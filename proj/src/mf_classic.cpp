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

#include "trimat/mf_classic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "trimat/error.hpp"
#include "trimat/rng.hpp"

namespace trimat {

std::string_view to_string(ClassicVariant variant) {
  return variant == ClassicVariant::kRaw ? "raw" : "normalized";
}

ClassicVariant classic_variant_from_string(std::string_view name) {
  if (name == "raw") return ClassicVariant::kRaw;
  if (name == "normalized") return ClassicVariant::kNormalized;
  throw ConfigError("unknown loss variant '" + std::string(name) +
                    "' (expected raw or normalized)");
}

namespace {

constexpr double kNormFloor = 1e-8;

void check_train_config(const TrainConfig& cfg) {
  if (cfg.learning_rate < 0.0) {
    throw ConfigError("learning rate must be >= 0");
  }
  if (cfg.epochs < 1) {
    throw ConfigError("epochs must be >= 1");
  }
  if (!(cfg.init_low < cfg.init_high)) {
    throw ConfigError("init_low must be < init_high");
  }
}

double cosine(const Eigen::RowVectorXd& u, const Eigen::RowVectorXd& v) {
  const double nu = std::max(u.norm(), kNormFloor);
  const double nv = std::max(v.norm(), kNormFloor);
  return u.dot(v) / (nu * nv);
}

double train_loss(const ClassicModel& m, const Dataset& ds) {
  double sum = 0.0;
  for (const Interaction& row : ds.interactions) {
    double e;
    if (m.variant == ClassicVariant::kRaw) {
      e = row.rating -
          m.user_factors.row(row.user).dot(m.item_factors.row(row.item));
    } else {
      e = row.rating / m.r_max -
          cosine(m.user_factors.row(row.user), m.item_factors.row(row.item));
    }
    sum += e * e;
  }
  return sum / static_cast<double>(ds.interactions.size());
}

}  // namespace

ClassicModel train_classic(const Dataset& train, int k, const TrainConfig& cfg,
                           ClassicVariant variant) {
  if (train.interactions.empty()) {
    throw EmptyDatasetError("cannot train on an empty dataset");
  }
  if (k < 1) {
    throw ConfigError("latent dimension k must be >= 1");
  }
  check_train_config(cfg);

  ClassicModel model;
  model.k = k;
  model.variant = variant;
  model.r_min = train.r_min;
  model.r_max = train.r_max;
  model.user_factors.resize(train.n_users, k);
  model.item_factors.resize(train.n_items, k);

  RngStream init_u(cfg.seed, "init-U");
  for (int i = 0; i < train.n_users; ++i)
    for (int f = 0; f < k; ++f)
      model.user_factors(i, f) = init_u.uniform(cfg.init_low, cfg.init_high);
  RngStream init_v(cfg.seed, "init-V");
  for (int j = 0; j < train.n_items; ++j)
    for (int f = 0; f < k; ++f)
      model.item_factors(j, f) = init_v.uniform(cfg.init_low, cfg.init_high);

  std::vector<std::size_t> order(train.interactions.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  RngStream shuffle_rng(cfg.seed, "shuffle");

  const double lr2 = 2.0 * cfg.learning_rate;
  Eigen::RowVectorXd u_old(k);
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    if (cfg.shuffle) shuffle_rng.shuffle(order);
    for (std::size_t ix : order) {
      const Interaction& row = train.interactions[ix];
      auto u = model.user_factors.row(row.user);
      auto v = model.item_factors.row(row.item);
      if (variant == ClassicVariant::kRaw) {
        // e = r - u.v
        const double e = row.rating - u.dot(v);
        u_old = u;
        u += lr2 * e * v;
        v += lr2 * e * u_old;
      } else {
        const double nu = std::max(u.norm(), kNormFloor);
        const double nv = std::max(v.norm(), kNormFloor);
        const double s = u.dot(v) / (nu * nv);
        const double e = row.rating / model.r_max - s;
        // d s / d u = v / (|u||v|) - s u / |u|^2, symmetrically for v
        u_old = u;
        u += lr2 * e * (v / (nu * nv) - s * u / (nu * nu));
        v += lr2 * e * (u_old / (nu * nv) - s * v / (nv * nv));
      }
    }
    const double loss = train_loss(model, train);
    if (!std::isfinite(loss) || !model.user_factors.allFinite() ||
        !model.item_factors.allFinite()) {
      throw DivergenceError("training diverged", epoch);
    }
    model.epoch_loss.push_back(loss);
  }
  return model;
}

double classic_score(const ClassicModel& model, int user, int item) {
  if (user < 0 || user >= model.user_factors.rows() || item < 0 ||
      item >= model.item_factors.rows()) {
    throw Error("prediction index out of range");
  }
  if (model.variant == ClassicVariant::kRaw) {
    return model.user_factors.row(user).dot(model.item_factors.row(item));
  }
  Eigen::RowVectorXd u = model.user_factors.row(user);
  Eigen::RowVectorXd v = model.item_factors.row(item);
  return cosine(u, v);
}

double predict_classic(const ClassicModel& model, int user, int item) {
  double score = classic_score(model, user, item);
  if (model.variant == ClassicVariant::kNormalized) {
    score *= model.r_max;
  }
  return std::clamp(score, model.r_min, model.r_max);
}

}  // namespace trimat
