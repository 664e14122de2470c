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

#include "trimat/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "trimat/error.hpp"

namespace trimat {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kReportVersion = 1;

std::string format_6sig(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

ordered_json opt_rounded(const std::optional<double>& value) {
  if (!value.has_value()) return nullptr;
  return round_6sig(*value);
}

std::optional<double> opt_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

void reject_unknown_keys(const json& j, const std::set<std::string>& known,
                         const char* where) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (known.count(key) == 0)
      throw ConfigError(std::string("config: unknown key '") + key +
                        "' in " + where);
  }
}

ordered_json data_source_to_json(const DataSourceConfig& data) {
  ordered_json j;
  if (data.kind == DataSourceKind::kFile) {
    j["kind"] = "file";
    j["path"] = data.path;
  } else {
    j["kind"] = "synthetic";
    j["n_users"] = data.synth.n_users;
    j["n_items"] = data.synth.n_items;
    j["n_interactions"] = data.synth.n_interactions;
    j["zipf_exponent"] = data.synth.zipf_exponent;
    j["seed"] = data.synth.seed;
    if (data.synth.planted_seed.has_value())
      j["planted_seed"] = *data.synth.planted_seed;
    else
      j["planted_seed"] = nullptr;
  }
  return j;
}

DataSourceConfig data_source_from_json(const json& j) {
  DataSourceConfig data;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "file") {
    reject_unknown_keys(j, {"kind", "path"}, "data");
    data.kind = DataSourceKind::kFile;
    data.path = j.at("path").get<std::string>();
  } else if (kind == "synthetic") {
    reject_unknown_keys(j,
                        {"kind", "n_users", "n_items", "n_interactions",
                         "zipf_exponent", "seed", "planted_seed"},
                        "data");
    data.kind = DataSourceKind::kSynthetic;
    data.synth.n_users = j.at("n_users").get<int>();
    data.synth.n_items = j.at("n_items").get<int>();
    data.synth.n_interactions = j.at("n_interactions").get<long>();
    if (j.contains("zipf_exponent"))
      data.synth.zipf_exponent = j["zipf_exponent"].get<double>();
    if (j.contains("seed"))
      data.synth.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("planted_seed") && !j["planted_seed"].is_null())
      data.synth.planted_seed = j["planted_seed"].get<std::uint64_t>();
  } else {
    throw ConfigError("config: data.kind must be 'file' or 'synthetic'");
  }
  return data;
}

ordered_json best_to_json(const BestCell& best) {
  ordered_json j;
  j["algorithm"] = to_string(best.algorithm);
  j["learning_rate"] = best.learning_rate;
  j["mae"] = round_6sig(best.mae);
  return j;
}

BestCell best_from_json(const json& j) {
  BestCell best;
  best.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
  best.learning_rate = j.at("learning_rate").get<double>();
  best.mae = j.at("mae").get<double>();
  return best;
}

}  // namespace

double round_6sig(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_6sig(x).c_str(), nullptr);
}

ordered_json config_to_json(const ExperimentConfig& config) {
  ordered_json j;
  j["data"] = data_source_to_json(config.data);
  ordered_json algos = ordered_json::array();
  for (Algorithm a : config.algorithms) algos.push_back(to_string(a));
  j["algorithms"] = std::move(algos);
  j["lr_grid"] = config.lr_grid;
  j["epochs"] = config.epochs;
  j["baseline_k"] = config.baseline_k;
  j["train_fraction"] = config.train_fraction;
  j["seed"] = config.seed;
  j["top_k"] = config.top_k;
  j["missing_policy"] = to_string(config.missing_policy);
  j["scaling"] = to_string(config.scaling);
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  try {
    reject_unknown_keys(j,
                        {"data", "algorithms", "lr_grid", "epochs",
                         "baseline_k", "train_fraction", "seed", "top_k",
                         "missing_policy", "scaling"},
                        "the top level");
    ExperimentConfig config;
    if (j.contains("data")) config.data = data_source_from_json(j["data"]);
    if (j.contains("algorithms")) {
      config.algorithms.clear();
      for (const auto& name : j["algorithms"])
        config.algorithms.push_back(
            algorithm_from_string(name.get<std::string>()));
    }
    if (j.contains("lr_grid"))
      config.lr_grid = j["lr_grid"].get<std::vector<double>>();
    if (j.contains("epochs")) config.epochs = j["epochs"].get<int>();
    if (j.contains("baseline_k"))
      config.baseline_k = j["baseline_k"].get<int>();
    if (j.contains("train_fraction"))
      config.train_fraction = j["train_fraction"].get<double>();
    if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("top_k")) config.top_k = j["top_k"].get<int>();
    if (j.contains("missing_policy"))
      config.missing_policy =
          missing_policy_from_string(j["missing_policy"].get<std::string>());
    if (j.contains("scaling"))
      config.scaling =
          rating_scaling_from_string(j["scaling"].get<std::string>());
    return config;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config file is not valid JSON: " +
                      std::string(e.what()));
  }
  return config_from_json(j);
}

std::string serialize_report_json(const ExperimentReport& report) {
  ordered_json j;
  j["format"] = "trimat-report";
  j["version"] = kReportVersion;
  j["config"] = config_to_json(report.config);

  ordered_json data;
  data["n_users"] = report.n_users;
  data["n_items"] = report.n_items;
  data["n_train"] = report.n_train;
  data["n_test"] = report.n_test;
  data["r_min"] = report.r_min;
  data["r_max"] = report.r_max;
  j["data"] = std::move(data);

  ordered_json fp;
  fp["trimat_params"] = report.footprint.trimat_params;
  fp["classic_params"] = report.footprint.classic_params;
  fp["ratio"] = round_6sig(report.footprint.ratio);
  fp["element_bytes"] = report.footprint.element_bytes;
  fp["trimat_bytes"] = report.footprint.trimat_bytes;
  fp["classic_bytes"] = report.footprint.classic_bytes;
  j["footprint"] = std::move(fp);

  j["popularity_slope"] = opt_rounded(report.popularity_slope);

  ordered_json cells = ordered_json::array();
  for (const CellResult& cell : report.cells) {
    ordered_json c;
    c["algorithm"] = to_string(cell.algorithm);
    c["learning_rate"] = cell.learning_rate;
    c["seed"] = cell.seed;
    c["status"] = cell.diverged ? "diverged" : "ok";
    c["divergence_epoch"] =
        cell.diverged ? ordered_json(cell.divergence_epoch)
                      : ordered_json(nullptr);
    c["mae"] = opt_rounded(cell.mae);
    c["final_train_loss"] = opt_rounded(cell.final_train_loss);
    c["recommendation_slope"] = opt_rounded(cell.recommendation_slope);
    c["dme"] = opt_rounded(cell.dme);
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);

  ordered_json bests = ordered_json::array();
  for (const BestCell& best : report.best_by_algorithm)
    bests.push_back(best_to_json(best));
  j["best_by_algorithm"] = std::move(bests);
  j["best"] = report.best.has_value() ? best_to_json(*report.best)
                                      : ordered_json(nullptr);

  return j.dump(2) + "\n";
}

ExperimentReport parse_report_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError("report is not valid JSON: " + std::string(e.what()));
  }
  try {
    if (j.value("format", "") != "trimat-report")
      throw SchemaError("report: missing or wrong 'format' marker");
    if (j.at("version").get<int>() != kReportVersion)
      throw SchemaError("report: unsupported version");

    ExperimentReport report;
    report.config = config_from_json(j.at("config"));
    const json& data = j.at("data");
    report.n_users = data.at("n_users").get<int>();
    report.n_items = data.at("n_items").get<int>();
    report.n_train = data.at("n_train").get<long long>();
    report.n_test = data.at("n_test").get<long long>();
    report.r_min = data.at("r_min").get<double>();
    report.r_max = data.at("r_max").get<double>();

    const json& fp = j.at("footprint");
    report.footprint.trimat_params = fp.at("trimat_params").get<long long>();
    report.footprint.classic_params =
        fp.at("classic_params").get<long long>();
    report.footprint.ratio = fp.at("ratio").get<double>();
    report.footprint.element_bytes = fp.at("element_bytes").get<int>();
    report.footprint.trimat_bytes = fp.at("trimat_bytes").get<long long>();
    report.footprint.classic_bytes = fp.at("classic_bytes").get<long long>();

    report.popularity_slope = opt_from_json(j.at("popularity_slope"));

    for (const json& c : j.at("cells")) {
      CellResult cell;
      cell.algorithm =
          algorithm_from_string(c.at("algorithm").get<std::string>());
      cell.learning_rate = c.at("learning_rate").get<double>();
      cell.seed = c.at("seed").get<std::uint64_t>();
      cell.diverged = c.at("status").get<std::string>() == "diverged";
      if (cell.diverged)
        cell.divergence_epoch = c.at("divergence_epoch").get<int>();
      cell.mae = opt_from_json(c.at("mae"));
      cell.final_train_loss = opt_from_json(c.at("final_train_loss"));
      cell.recommendation_slope =
          opt_from_json(c.at("recommendation_slope"));
      cell.dme = opt_from_json(c.at("dme"));
      report.cells.push_back(std::move(cell));
    }

    for (const json& b : j.at("best_by_algorithm"))
      report.best_by_algorithm.push_back(best_from_json(b));
    if (!j.at("best").is_null()) report.best = best_from_json(j.at("best"));
    return report;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("report: ") + e.what());
  }
}

std::string serialize_report_table(const ExperimentReport& report) {
  std::ostringstream out;
  const auto col = [](const std::optional<double>& v) {
    return v.has_value() ? format_6sig(*v) : std::string("-");
  };
  out << "algorithm\tlearning_rate\tstatus\tmae\tdme\trecommendation_slope"
         "\tfinal_train_loss\n";
  for (const CellResult& cell : report.cells) {
    out << to_string(cell.algorithm) << '\t'
        << format_6sig(cell.learning_rate) << '\t';
    if (cell.diverged)
      out << "diverged@" << cell.divergence_epoch;
    else
      out << "ok";
    out << '\t' << col(cell.mae) << '\t' << col(cell.dme) << '\t'
        << col(cell.recommendation_slope) << '\t'
        << col(cell.final_train_loss) << '\n';
  }
  return out.str();
}

void write_plot_files(const ExperimentReport& report,
                      const std::string& out_dir) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::path(out_dir) / "plotdata";
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw DataError("cannot create plot directory: " + dir.string() + ": " +
                    ec.message());

  const auto open = [](const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write plot file: " + path.string());
    return out;
  };
  const auto series_name = [](const CellResult& cell) {
    return std::string(to_string(cell.algorithm)) + "__lr" +
           format_6sig(cell.learning_rate);
  };

  {
    std::ofstream out = open(dir / "popularity.tsv");
    out << "rank\tfrequency\n";
    for (std::size_t r = 0; r < report.popularity_frequency.size(); ++r)
      out << (r + 1) << '\t' << format_6sig(report.popularity_frequency[r])
          << '\n';
  }
  for (const CellResult& cell : report.cells) {
    if (!cell.epoch_loss.empty()) {
      std::ofstream out = open(dir / ("loss__" + series_name(cell) + ".tsv"));
      out << "epoch\tloss\n";
      for (std::size_t e = 0; e < cell.epoch_loss.size(); ++e)
        out << (e + 1) << '\t' << format_6sig(cell.epoch_loss[e]) << '\n';
    }
    if (!cell.recommendation_frequency.empty()) {
      std::ofstream out =
          open(dir / ("rankfreq__" + series_name(cell) + ".tsv"));
      out << "rank\tfrequency\n";
      for (std::size_t r = 0; r < cell.recommendation_frequency.size(); ++r)
        out << (r + 1) << '\t'
            << format_6sig(cell.recommendation_frequency[r]) << '\n';
    }
  }
}

}  // namespace trimat
