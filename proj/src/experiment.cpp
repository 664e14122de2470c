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

#include "trimat/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>
#include <string>

#include "trimat/csv.hpp"
#include "trimat/error.hpp"
#include "trimat/metrics.hpp"
#include "trimat/mf_classic.hpp"
#include "trimat/rng.hpp"
#include "trimat/split.hpp"

namespace trimat {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kClassicRaw:
      return "classic-raw";
    case Algorithm::kClassicNormalized:
      return "classic-normalized";
    case Algorithm::kTriMatGlobal:
      return "trimat-global";
    case Algorithm::kTriMatPerInteraction:
      return "trimat-per-interaction";
  }
  throw ConfigError("unknown algorithm enumerator");
}

Algorithm algorithm_from_string(std::string_view name) {
  for (Algorithm a : all_algorithms())
    if (name == to_string(a)) return a;
  throw ConfigError(
      "unknown algorithm '" + std::string(name) +
      "' (expected classic-raw, classic-normalized, trimat-global or "
      "trimat-per-interaction)");
}

std::vector<Algorithm> all_algorithms() {
  return {Algorithm::kClassicRaw, Algorithm::kClassicNormalized,
          Algorithm::kTriMatGlobal, Algorithm::kTriMatPerInteraction};
}

Dataset load_data(const DataSourceConfig& source) {
  if (source.kind == DataSourceKind::kFile) {
    if (source.path.empty())
      throw ConfigError("data source: file kind needs a path");
    return load_csv(source.path, ColumnMapping::ldos_comoda());
  }
  return synth_zipf(source.synth);
}

void ExperimentConfig::validate() const {
  if (data.kind == DataSourceKind::kFile) {
    if (data.path.empty()) throw ConfigError("config: data.path is empty");
  } else {
    if (data.synth.n_users < 1 || data.synth.n_items < 1 ||
        data.synth.n_interactions < 1)
      throw ConfigError("config: synthetic sizes must be >= 1");
    if (!(data.synth.zipf_exponent >= 0.0))
      throw ConfigError("config: zipf_exponent must be >= 0");
  }
  if (algorithms.empty()) throw ConfigError("config: no algorithms selected");
  if (lr_grid.empty()) throw ConfigError("config: lr_grid is empty");
  for (double lr : lr_grid) {
    if (!std::isfinite(lr) || lr <= 0.0)
      throw ConfigError("config: every grid learning rate must be a finite "
                        "positive number");
  }
  if (epochs < 1) throw ConfigError("config: epochs must be >= 1");
  if (baseline_k < 1) throw ConfigError("config: baseline_k must be >= 1");
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ConfigError("config: train_fraction must lie strictly in (0, 1)");
  if (top_k < 1) throw ConfigError("config: top_k must be >= 1");
}

std::uint64_t cell_seed(std::uint64_t master_seed, Algorithm algorithm,
                        double learning_rate) {
  std::uint64_t lr_bits = 0;
  static_assert(sizeof(lr_bits) == sizeof(learning_rate));
  std::memcpy(&lr_bits, &learning_rate, sizeof(lr_bits));
  const std::uint64_t mixed =
      stable_mix64(master_seed ^ stable_hash64(to_string(algorithm)));
  return stable_mix64(mixed ^ lr_bits);
}

namespace {

// Trains one grid cell and computes its metrics. Divergence is a result,
// not an error, so a blown-up cell never aborts the sweep.
CellResult run_cell(const Dataset& train, const Dataset& test,
                    const ExperimentConfig& cfg, Algorithm algorithm,
                    double lr, std::optional<double> popularity_slope) {
  CellResult cell;
  cell.algorithm = algorithm;
  cell.learning_rate = lr;
  cell.seed = cell_seed(cfg.seed, algorithm, lr);

  TrainConfig tc;
  tc.learning_rate = lr;
  tc.epochs = cfg.epochs;
  tc.seed = cell.seed;

  std::function<double(const Interaction&)> predict;
  Scorer scorer;
  ClassicModel classic;
  TriMatModel tri;
  try {
    switch (algorithm) {
      case Algorithm::kClassicRaw:
      case Algorithm::kClassicNormalized: {
        const ClassicVariant variant = algorithm == Algorithm::kClassicRaw
                                           ? ClassicVariant::kRaw
                                           : ClassicVariant::kNormalized;
        classic = train_classic(train, cfg.baseline_k, tc, variant);
        cell.epoch_loss = classic.epoch_loss;
        predict = [&classic](const Interaction& row) {
          return predict_classic(classic, row.user, row.item);
        };
        scorer = make_scorer(classic);
        break;
      }
      case Algorithm::kTriMatGlobal:
      case Algorithm::kTriMatPerInteraction: {
        const ContextMode mode = algorithm == Algorithm::kTriMatGlobal
                                     ? ContextMode::kGlobal
                                     : ContextMode::kPerInteraction;
        tri = train_trimat(train, tc, mode, cfg.scaling, cfg.missing_policy);
        cell.epoch_loss = tri.epoch_loss;
        predict = [&tri](const Interaction& row) {
          return predict_trimat(tri, row.user, row.item, &row.context,
                                OutOfRangePolicy::kClampToOne);
        };
        scorer = make_scorer(tri, train);
        break;
      }
    }
  } catch (const DivergenceError& e) {
    cell.diverged = true;
    cell.divergence_epoch = e.epoch();
    return cell;
  }

  cell.final_train_loss = cell.epoch_loss.back();

  std::vector<double> predicted, actual;
  predicted.reserve(test.size());
  actual.reserve(test.size());
  for (const Interaction& row : test.interactions) {
    predicted.push_back(predict(row));
    actual.push_back(row.rating);
  }
  cell.mae = mae(predicted, actual);

  const TopKLists lists =
      top_k(scorer, train.n_users, train.n_items, cfg.top_k, train);
  const std::vector<double> counts =
      recommendation_counts(lists, train.n_items);
  try {
    const RankFrequency fit = rank_frequency(counts);
    cell.recommendation_slope = fit.slope;
    cell.recommendation_frequency = fit.frequency;
    if (popularity_slope.has_value())
      cell.dme = fit.slope - *popularity_slope;
  } catch (const UndefinedSlopeError&) {
    cell.recommendation_frequency = counts;
    std::sort(cell.recommendation_frequency.begin(),
              cell.recommendation_frequency.end(), std::greater<double>());
  }
  return cell;
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config,
                                CellOrder order) {
  config.validate();
  return run_experiment(load_data(config.data), config, order);
}

ExperimentReport run_experiment(const Dataset& dataset,
                                const ExperimentConfig& config,
                                CellOrder order) {
  config.validate();

  ExperimentReport report;
  report.config = config;

  SplitSpec split_spec;
  split_spec.train_fraction = config.train_fraction;
  split_spec.seed = config.seed;
  const auto [train, test] = split(dataset, split_spec);

  report.n_users = dataset.n_users;
  report.n_items = dataset.n_items;
  report.n_train = static_cast<long long>(train.size());
  report.n_test = static_cast<long long>(test.size());
  report.r_min = train.r_min;
  report.r_max = train.r_max;
  report.footprint =
      footprint(dataset.n_users, dataset.n_items, config.baseline_k);

  const std::vector<double> popularity = popularity_counts(train);
  try {
    const RankFrequency fit = rank_frequency(popularity);
    report.popularity_slope = fit.slope;
    report.popularity_frequency = fit.frequency;
  } catch (const UndefinedSlopeError&) {
    report.popularity_frequency = popularity;
    std::sort(report.popularity_frequency.begin(),
              report.popularity_frequency.end(), std::greater<double>());
  }

  // Cells execute forward or backward but land in canonical slots, so the
  // report is identical either way.
  const std::size_t n_cells =
      config.algorithms.size() * config.lr_grid.size();
  report.cells.resize(n_cells);
  std::vector<std::size_t> run_order(n_cells);
  for (std::size_t i = 0; i < n_cells; ++i) run_order[i] = i;
  if (order == CellOrder::kReverse)
    std::reverse(run_order.begin(), run_order.end());

  for (std::size_t slot : run_order) {
    const Algorithm algorithm =
        config.algorithms[slot / config.lr_grid.size()];
    const double lr = config.lr_grid[slot % config.lr_grid.size()];
    report.cells[slot] = run_cell(train, test, config, algorithm, lr,
                                  report.popularity_slope);
  }

  // Lowest MAE wins; ties go to the smaller learning rate, then to the
  // algorithm listed first.
  const auto better = [](const BestCell& a, const BestCell& b) {
    if (a.mae != b.mae) return a.mae < b.mae;
    return a.learning_rate < b.learning_rate;
  };
  for (Algorithm algorithm : config.algorithms) {
    std::optional<BestCell> best_here;
    for (const CellResult& cell : report.cells) {
      if (cell.algorithm != algorithm || !cell.mae.has_value()) continue;
      BestCell candidate{cell.algorithm, cell.learning_rate, *cell.mae};
      if (!best_here.has_value() || better(candidate, *best_here))
        best_here = candidate;
    }
    if (best_here.has_value()) {
      report.best_by_algorithm.push_back(*best_here);
      if (!report.best.has_value() || better(*best_here, *report.best))
        report.best = *best_here;
    }
  }
  return report;
}

}  // namespace trimat
