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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trimat/dataset.hpp"
#include "trimat/synth.hpp"
#include "trimat/trimat.hpp"

namespace trimat {

// The four trainable recommenders the harness compares.
enum class Algorithm {
  kClassicRaw,
  kClassicNormalized,
  kTriMatGlobal,
  kTriMatPerInteraction,
};

// "classic-raw" / "classic-normalized" / "trimat-global" /
// "trimat-per-interaction". The parser throws ConfigError on anything else.
std::string_view to_string(Algorithm algorithm);
Algorithm algorithm_from_string(std::string_view name);
std::vector<Algorithm> all_algorithms();

enum class DataSourceKind { kFile, kSynthetic };

// Where the experiment's interactions come from: a CSV file with the
// standard nine columns (userID, itemID, rating, then the six context
// fields), or the synthetic generator.
struct DataSourceConfig {
  DataSourceKind kind = DataSourceKind::kFile;
  std::string path;  // kFile
  SynthSpec synth;   // kSynthetic
};

Dataset load_data(const DataSourceConfig& source);

struct ExperimentConfig {
  DataSourceConfig data;
  std::vector<Algorithm> algorithms = all_algorithms();
  std::vector<double> lr_grid = {1e-4, 5e-4, 1e-3, 5e-3, 1e-2, 5e-2};
  int epochs = 200;
  int baseline_k = 30;  // rank of the classic baselines
  double train_fraction = 0.8;
  std::uint64_t seed = 42;  // drives the split and every cell's derived seed
  int top_k = 10;           // list length for the Matthew-effect metric
  MissingPolicy missing_policy = MissingPolicy::kFieldMean;
  RatingScaling scaling = RatingScaling::kScaled;

  // Throws ConfigError on the first violated constraint.
  void validate() const;
};

// Every grid cell trains from scratch with its own seed, derived from the
// master seed, the algorithm name and the learning-rate bits. Cells are
// therefore independent of the order they are run in.
std::uint64_t cell_seed(std::uint64_t master_seed, Algorithm algorithm,
                        double learning_rate);

struct CellResult {
  Algorithm algorithm = Algorithm::kClassicRaw;
  double learning_rate = 0.0;
  std::uint64_t seed = 0;  // the derived cell seed
  bool diverged = false;
  int divergence_epoch = 0;  // 1-based, meaningful only when diverged
  std::optional<double> mae;
  std::optional<double> final_train_loss;
  std::optional<double> recommendation_slope;
  std::optional<double> dme;  // recommendation slope - popularity slope
  // Plot payloads, kept out of the serialized report:
  std::vector<double> epoch_loss;
  std::vector<double> recommendation_frequency;  // sorted descending
};

struct BestCell {
  Algorithm algorithm = Algorithm::kClassicRaw;
  double learning_rate = 0.0;
  double mae = 0.0;
};

struct ExperimentReport {
  ExperimentConfig config;
  int n_users = 0;
  int n_items = 0;
  long long n_train = 0;
  long long n_test = 0;
  double r_min = 0.0;
  double r_max = 0.0;
  FootprintReport footprint;  // tri-factor vs the rank-k baseline
  std::optional<double> popularity_slope;  // of the training split
  std::vector<double> popularity_frequency;  // sorted descending (plots)
  std::vector<CellResult> cells;  // canonical order: config algorithms x grid
  std::vector<BestCell> best_by_algorithm;  // lowest MAE, ties to smaller lr
  std::optional<BestCell> best;  // empty if every cell diverged
};

// Execution order of the grid cells. Results are always reported in
// canonical order; this knob exists so tests can demonstrate that running
// the grid backwards changes nothing.
enum class CellOrder { kForward, kReverse };

ExperimentReport run_experiment(const ExperimentConfig& config,
                                CellOrder order = CellOrder::kForward);
ExperimentReport run_experiment(const Dataset& dataset,
                                const ExperimentConfig& config,
                                CellOrder order = CellOrder::kForward);

}  // namespace trimat
