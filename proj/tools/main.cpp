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

// trimat: context-aware recommender toolkit.
//
// Subcommands: validate, train, evaluate, gridsearch, synth, footprint.
// Exit codes: 0 success, 1 usage/config error, 2 data/schema error.
// Every subcommand is deterministic given its inputs and seeds.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "trimat/csv.hpp"
#include "trimat/error.hpp"
#include "trimat/experiment.hpp"
#include "trimat/metrics.hpp"
#include "trimat/model_io.hpp"
#include "trimat/report_io.hpp"
#include "trimat/split.hpp"
#include "trimat/synth.hpp"

namespace {

using namespace trimat;

std::string fmt6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

std::string fmt_exact(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

char parse_delimiter(const std::string& s) {
  if (s == "\\t" || s == "tab") return '\t';
  if (s.size() != 1)
    throw ConfigError("--delimiter expects a single character (or 'tab')");
  return s[0];
}

// Shared --data/--config data-source plumbing for train and evaluate.
Dataset load_from_flags(const std::string& data_path,
                        const std::string& config_path) {
  if (!data_path.empty() && !config_path.empty())
    throw ConfigError("pass either --data or --config, not both");
  if (!data_path.empty()) {
    DataSourceConfig source;
    source.kind = DataSourceKind::kFile;
    source.path = data_path;
    return load_data(source);
  }
  if (!config_path.empty())
    return load_data(load_experiment_config(config_path).data);
  throw ConfigError("a data source is required: --data <csv> or --config "
                    "<config.json>");
}

int run_validate(const std::string& path, bool positional,
                 const std::string& delimiter, bool no_header) {
  ColumnMapping mapping = positional
                              ? ColumnMapping::positional()
                              : ColumnMapping::ldos_comoda();
  if (!delimiter.empty()) mapping.delimiter = parse_delimiter(delimiter);
  if (no_header) {
    if (!positional)
      throw ConfigError("--no-header requires --positional (named columns "
                        "need a header row)");
    mapping.has_header = false;
  }

  const Dataset ds = load_csv(path, mapping);
  std::cout << "rows " << ds.size() << "\n"
            << "users " << ds.n_users << "\n"
            << "items " << ds.n_items << "\n"
            << "rating_min " << fmt6(ds.r_min) << "\n"
            << "rating_max " << fmt6(ds.r_max) << "\n";
  for (int f = 0; f < kNumContextFields; ++f) {
    long missing = 0;
    for (const Interaction& row : ds.interactions)
      if (row.context.missing[f]) ++missing;
    const double rate =
        static_cast<double>(missing) / static_cast<double>(ds.size());
    std::cout << "context." << kContextFieldNames[f] << " max_code "
              << ds.context_stats.max_code[f] << " missing " << missing
              << "/" << ds.size() << " (" << fmt6(100.0 * rate) << "%)\n";
  }
  return 0;
}

int run_train(const std::string& data_path, const std::string& config_path,
              const std::string& algorithm_name,
              const std::string& context_mode, double lr, int epochs, int k,
              std::uint64_t seed, const std::string& scaling,
              const std::string& missing, double split_frac,
              const std::string& out_path) {
  Dataset full = load_from_flags(data_path, config_path);
  Dataset train_set = full;
  if (split_frac != 0.0) {
    SplitSpec spec;
    spec.train_fraction = split_frac;
    spec.seed = seed;
    train_set = split(full, spec).first;
  }

  TrainConfig tc;
  tc.learning_rate = lr;
  tc.epochs = epochs;
  tc.seed = seed;

  // "trimat" alone picks the context mode from --context-mode.
  const std::string name = algorithm_name == "trimat"
                               ? "trimat-" + context_mode
                               : algorithm_name;
  const Algorithm algorithm = algorithm_from_string(name);

  AnyModel model;
  switch (algorithm) {
    case Algorithm::kClassicRaw:
      model = train_classic(train_set, k, tc, ClassicVariant::kRaw);
      break;
    case Algorithm::kClassicNormalized:
      model = train_classic(train_set, k, tc, ClassicVariant::kNormalized);
      break;
    case Algorithm::kTriMatGlobal:
    case Algorithm::kTriMatPerInteraction:
      model = train_trimat(train_set, tc,
                           algorithm == Algorithm::kTriMatGlobal
                               ? ContextMode::kGlobal
                               : ContextMode::kPerInteraction,
                           rating_scaling_from_string(scaling),
                           missing_policy_from_string(missing));
      break;
  }
  save_model(model, out_path);

  const std::vector<double>& loss = std::visit(
      [](const auto& m) -> const std::vector<double>& { return m.epoch_loss; },
      model);
  std::cout << "algorithm " << name << "\n"
            << "train_rows " << train_set.size() << "\n"
            << "epochs " << epochs << "\n"
            << "final_train_loss " << fmt6(loss.back()) << "\n"
            << "model " << out_path << "\n";
  return 0;
}

int run_evaluate(const std::string& model_path, const std::string& data_path,
                 const std::string& config_path, double split_frac,
                 std::uint64_t seed, int top_k_len) {
  const AnyModel model = load_model(model_path);
  const Dataset full = load_from_flags(data_path, config_path);

  const auto [model_users, model_items] = std::visit(
      [](const auto& m) {
        return std::pair<int, int>(static_cast<int>(m.user_factors.rows()),
                                   static_cast<int>(m.item_factors.rows()));
      },
      model);
  if (full.n_users > model_users || full.n_items > model_items)
    throw ConfigError(
        "model covers " + std::to_string(model_users) + " users x " +
        std::to_string(model_items) + " items but the dataset has " +
        std::to_string(full.n_users) + " x " + std::to_string(full.n_items) +
        "; evaluate against the dataset the model was trained from");

  SplitSpec spec;
  spec.train_fraction = split_frac;
  spec.seed = seed;
  const auto [train_set, test_set] = split(full, spec);

  std::vector<double> predicted, actual;
  predicted.reserve(test_set.size());
  actual.reserve(test_set.size());
  Scorer scorer;
  if (const auto* classic = std::get_if<ClassicModel>(&model)) {
    for (const Interaction& row : test_set.interactions) {
      predicted.push_back(predict_classic(*classic, row.user, row.item));
      actual.push_back(row.rating);
    }
    scorer = make_scorer(*classic);
  } else {
    const auto& tri = std::get<TriMatModel>(model);
    for (const Interaction& row : test_set.interactions) {
      predicted.push_back(predict_trimat(tri, row.user, row.item,
                                         &row.context,
                                         OutOfRangePolicy::kClampToOne));
      actual.push_back(row.rating);
    }
    scorer = make_scorer(tri, train_set);
  }

  std::cout << "test_rows " << test_set.size() << "\n"
            << "mae " << fmt6(mae(predicted, actual)) << "\n";
  try {
    const TopKLists lists =
        top_k(scorer, full.n_users, full.n_items, top_k_len, train_set);
    const MatthewEffect effect = degree_of_matthew_effect(
        recommendation_counts(lists, full.n_items),
        popularity_counts(train_set));
    std::cout << "recommendation_slope " << fmt6(effect.recommendation_slope)
              << "\n"
              << "popularity_slope " << fmt6(effect.popularity_slope) << "\n"
              << "dme " << fmt6(effect.degree) << "\n";
  } catch (const UndefinedSlopeError&) {
    std::cout << "dme undefined (fewer than two positive frequencies)\n";
  }
  return 0;
}

int run_gridsearch(const std::string& config_path,
                   const std::string& data_path, const std::string& out_dir,
                   const CLI::App* cmd, std::uint64_t seed,
                   const std::vector<double>& lr_grid, int epochs, int k,
                   double split_frac, int top_k_len,
                   const std::string& scaling, const std::string& missing) {
  ExperimentConfig config;
  if (!config_path.empty()) config = load_experiment_config(config_path);
  if (!data_path.empty()) {
    config.data.kind = DataSourceKind::kFile;
    config.data.path = data_path;
  } else if (config_path.empty()) {
    throw ConfigError("a data source is required: --config <config.json> "
                      "or --data <csv>");
  }
  // Flag overrides land in the config itself, so the report echoes them.
  if (cmd->count("--seed") > 0) config.seed = seed;
  if (cmd->count("--lr-grid") > 0) config.lr_grid = lr_grid;
  if (cmd->count("--epochs") > 0) config.epochs = epochs;
  if (cmd->count("--k") > 0) config.baseline_k = k;
  if (cmd->count("--split-frac") > 0) config.train_fraction = split_frac;
  if (cmd->count("--topk") > 0) config.top_k = top_k_len;
  if (cmd->count("--scaling") > 0)
    config.scaling = rating_scaling_from_string(scaling);
  if (cmd->count("--missing") > 0)
    config.missing_policy = missing_policy_from_string(missing);
  config.validate();

  const ExperimentReport report = run_experiment(config);

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec)
    throw DataError("cannot create output directory: " + out_dir + ": " +
                    ec.message());
  const auto write_file = [&](const char* name, const std::string& body) {
    const fs::path path = fs::path(out_dir) / name;
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << body;
  };
  write_file("report.json", serialize_report_json(report));
  write_file("report.tsv", serialize_report_table(report));
  write_plot_files(report, out_dir);

  std::cout << serialize_report_table(report);
  std::cout << "footprint_ratio " << fmt6(report.footprint.ratio) << " ("
            << report.footprint.trimat_params << "/"
            << report.footprint.classic_params << ")\n";
  if (report.best.has_value()) {
    std::cout << "best " << to_string(report.best->algorithm) << " lr "
              << fmt6(report.best->learning_rate) << " mae "
              << fmt6(report.best->mae) << "\n";
  } else {
    std::cout << "best none (every cell diverged)\n";
  }
  std::cout << "wrote " << out_dir << "/report.json, " << out_dir
            << "/report.tsv, " << out_dir << "/plotdata/\n";
  return 0;
}

int run_synth(int n_users, int n_items, long n_rows, double zipf,
              std::uint64_t seed, std::int64_t planted_seed,
              const std::string& out_path) {
  SynthSpec spec;
  spec.n_users = n_users;
  spec.n_items = n_items;
  spec.n_interactions = n_rows;
  spec.zipf_exponent = zipf;
  spec.seed = seed;
  if (planted_seed >= 0)
    spec.planted_seed = static_cast<std::uint64_t>(planted_seed);

  const Dataset ds = synth_zipf(spec);
  std::ofstream out(out_path);
  if (!out) throw DataError("cannot write " + out_path);
  out << "userID,itemID,rating,location,mood,weather,season,daytype,endEmo\n";
  for (const Interaction& row : ds.interactions) {
    out << ds.user_ids[row.user] << ',' << ds.item_ids[row.item] << ','
        << fmt_exact(row.rating);
    for (int f = 0; f < kNumContextFields; ++f)
      out << ',' << (row.context.missing[f] ? -1 : row.context.code[f]);
    out << '\n';
  }
  if (!out) throw DataError("failed while writing " + out_path);
  std::cout << "rows " << ds.size() << "\n"
            << "users " << ds.n_users << "\n"
            << "items " << ds.n_items << "\n"
            << "file " << out_path << "\n";
  return 0;
}

int run_footprint(long long n_users, long long n_items, int k) {
  const FootprintReport fp = footprint(n_users, n_items, k);
  std::cout << "trimat_params " << fp.trimat_params << "\n"
            << "classic_params " << fp.classic_params << "\n"
            << "ratio " << fmt6(fp.ratio) << "\n"
            << "trimat_bytes " << fp.trimat_bytes << "\n"
            << "classic_bytes " << fp.classic_bytes << "\n"
            << "verdict " << (fp.ratio < 0.10 ? "PASS" : "FAIL")
            << " (threshold 0.1)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trimat: context-aware recommender toolkit"};
  app.require_subcommand(1);
  int rc = 0;

  // validate
  auto* validate = app.add_subcommand(
      "validate", "Load a ratings CSV and print a data summary");
  std::string v_path, v_delim;
  bool v_positional = false, v_no_header = false;
  validate->add_option("path", v_path, "CSV file")->required();
  validate->add_flag("--positional", v_positional,
                     "columns by position (user,item,rating,6 context)");
  validate->add_option("--delimiter", v_delim,
                       "field delimiter (single char or 'tab')");
  validate->add_flag("--no-header", v_no_header,
                     "file has no header row (needs --positional)");
  validate->callback([&] {
    rc = run_validate(v_path, v_positional, v_delim, v_no_header);
  });

  // train
  auto* train = app.add_subcommand("train", "Train one model and save it");
  std::string t_data, t_config, t_algorithm, t_out = "model.json";
  std::string t_mode = "global", t_scaling = "scaled", t_missing = "mean";
  double t_lr = 1e-3, t_split = 0.0;
  int t_epochs = 200, t_k = 30;
  std::uint64_t t_seed = 42;
  train->add_option("--data", t_data, "ratings CSV (LDOS-style header)");
  train->add_option("--config", t_config,
                    "experiment config supplying the data source");
  train
      ->add_option("--algorithm", t_algorithm,
                   "classic-raw | classic-normalized | trimat | "
                   "trimat-global | trimat-per-interaction")
      ->required();
  train->add_option("--context-mode", t_mode,
                    "global | per-interaction (with --algorithm trimat)");
  train->add_option("--lr", t_lr, "learning rate");
  train->add_option("--epochs", t_epochs, "training epochs");
  train->add_option("--k", t_k, "baseline factor rank");
  train->add_option("--seed", t_seed, "RNG seed");
  train->add_option("--scaling", t_scaling, "scaled | raw");
  train->add_option("--missing", t_missing, "mean | const05");
  train->add_option("--split-frac", t_split,
                    "train on this fraction only (0 = use every row)");
  train->add_option("--out", t_out, "model output path");
  train->callback([&] {
    rc = run_train(t_data, t_config, t_algorithm, t_mode, t_lr, t_epochs,
                   t_k, t_seed, t_scaling, t_missing, t_split, t_out);
  });

  // evaluate
  auto* evaluate = app.add_subcommand(
      "evaluate", "Score a saved model on a held-out split");
  std::string e_model, e_data, e_config;
  double e_split = 0.8;
  std::uint64_t e_seed = 42;
  int e_topk = 10;
  evaluate->add_option("--model", e_model, "model file")->required();
  evaluate->add_option("--data", e_data, "ratings CSV (LDOS-style header)");
  evaluate->add_option("--config", e_config,
                       "experiment config supplying the data source");
  evaluate->add_option("--split-frac", e_split, "train fraction of split");
  evaluate->add_option("--seed", e_seed, "split seed");
  evaluate->add_option("--topk", e_topk, "recommendation list length");
  evaluate->callback([&] {
    rc = run_evaluate(e_model, e_data, e_config, e_split, e_seed, e_topk);
  });

  // gridsearch
  auto* gridsearch = app.add_subcommand(
      "gridsearch", "Sweep learning rates and write report + plot data");
  std::string g_config, g_data, g_out = ".";
  std::string g_scaling = "scaled", g_missing = "mean";
  std::vector<double> g_grid;
  double g_split = 0.8;
  int g_epochs = 200, g_k = 30, g_topk = 10;
  std::uint64_t g_seed = 42;
  gridsearch->add_option("--config", g_config, "experiment config JSON");
  gridsearch->add_option("--data", g_data,
                         "ratings CSV (overrides the config data source)");
  gridsearch->add_option("--out", g_out, "output directory");
  gridsearch->add_option("--seed", g_seed, "master seed");
  gridsearch
      ->add_option("--lr-grid", g_grid, "comma-separated learning rates")
      ->delimiter(',');
  gridsearch->add_option("--epochs", g_epochs, "training epochs per cell");
  gridsearch->add_option("--k", g_k, "baseline factor rank");
  gridsearch->add_option("--split-frac", g_split, "train fraction");
  gridsearch->add_option("--topk", g_topk, "recommendation list length");
  gridsearch->add_option("--scaling", g_scaling, "scaled | raw");
  gridsearch->add_option("--missing", g_missing, "mean | const05");
  gridsearch->callback([&] {
    rc = run_gridsearch(g_config, g_data, g_out, gridsearch, g_seed, g_grid,
                        g_epochs, g_k, g_split, g_topk, g_scaling,
                        g_missing);
  });

  // synth
  auto* synth = app.add_subcommand(
      "synth", "Generate a synthetic ratings CSV with Zipf popularity");
  int s_users = 0, s_items = 0;
  long s_rows = 0;
  double s_zipf = 1.0;
  std::uint64_t s_seed = 42;
  std::int64_t s_planted = -1;
  std::string s_out = "synth.csv";
  synth->add_option("--users", s_users, "number of users")->required();
  synth->add_option("--items", s_items, "number of items")->required();
  synth->add_option("--rows", s_rows, "number of interactions")->required();
  synth->add_option("--zipf", s_zipf, "popularity exponent (>= 0)");
  synth->add_option("--seed", s_seed, "RNG seed");
  synth->add_option("--planted-seed", s_planted,
                    "plant a noiseless tri-factor model (-1 = random "
                    "integer ratings)");
  synth->add_option("--out", s_out, "output CSV path");
  synth->callback([&] {
    rc = run_synth(s_users, s_items, s_rows, s_zipf, s_seed, s_planted,
                   s_out);
  });

  // footprint
  auto* fp = app.add_subcommand(
      "footprint", "Compare trainable-parameter counts against a rank-k "
                   "baseline");
  long long f_users = 0, f_items = 0;
  int f_k = 0;
  fp->add_option("n_users", f_users, "number of users")->required();
  fp->add_option("n_items", f_items, "number of items")->required();
  fp->add_option("k", f_k, "baseline factor rank")->required();
  fp->callback([&] { rc = run_footprint(f_users, f_items, f_k); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const trimat::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const trimat::DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const trimat::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
