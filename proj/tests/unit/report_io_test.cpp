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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <string>

#include "trimat/error.hpp"

using namespace trimat;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.data.kind = DataSourceKind::kSynthetic;
  cfg.data.synth.n_users = 20;
  cfg.data.synth.n_items = 30;
  cfg.data.synth.n_interactions = 400;
  cfg.data.synth.seed = 9;
  cfg.algorithms = {Algorithm::kClassicRaw, Algorithm::kTriMatGlobal};
  cfg.lr_grid = {0.005, 500.0};  // the hot rate forces a diverged cell
  cfg.epochs = 6;
  cfg.baseline_k = 3;
  cfg.top_k = 4;
  return cfg;
}

}  // namespace

TEST_CASE("round_6sig keeps six significant digits and is idempotent") {
  CHECK(round_6sig(0.0697955231) == 0.0697955);
  CHECK(round_6sig(123456789.0) == 123457000.0);
  CHECK(round_6sig(-1.4590219582913309) == -1.45902);
  CHECK(round_6sig(0.0) == 0.0);
  CHECK(round_6sig(2.5) == 2.5);
  for (double x : {3.14159265358979, 1e-17, -0.000123456789, 8.0 / 3.0}) {
    const double once = round_6sig(x);
    CHECK(round_6sig(once) == once);
  }
  CHECK(std::isnan(round_6sig(std::nan(""))));
  CHECK(round_6sig(std::numeric_limits<double>::infinity()) ==
        std::numeric_limits<double>::infinity());
}

TEST_CASE("config json round-trips and honors defaults") {
  const ExperimentConfig cfg = tiny_config();
  const nlohmann::ordered_json j = config_to_json(cfg);
  const ExperimentConfig back = config_from_json(j);
  CHECK(back.data.kind == DataSourceKind::kSynthetic);
  CHECK(back.data.synth.n_users == 20);
  CHECK(back.lr_grid == cfg.lr_grid);
  CHECK(back.epochs == 6);
  CHECK(back.baseline_k == 3);
  CHECK(back.top_k == 4);
  CHECK(back.algorithms == cfg.algorithms);
  CHECK(back.missing_policy == cfg.missing_policy);
  CHECK(back.scaling == cfg.scaling);

  // An almost-empty config takes every default.
  const ExperimentConfig defaults = config_from_json(
      nlohmann::json::parse(R"({"data": {"kind": "file", "path": "x.csv"}})"));
  CHECK(defaults.data.path == "x.csv");
  CHECK(defaults.algorithms == all_algorithms());
  CHECK(defaults.lr_grid ==
        std::vector<double>{1e-4, 5e-4, 1e-3, 5e-3, 1e-2, 5e-2});
  CHECK(defaults.epochs == 200);
  CHECK(defaults.baseline_k == 30);
  CHECK(defaults.train_fraction == 0.8);
  CHECK(defaults.seed == 42);
  CHECK(defaults.top_k == 10);
}

TEST_CASE("config json rejects typos and bad names") {
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(
                      R"({"data": {"kind": "file", "path": "x"},
                          "epoches": 3})")),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(
                      R"({"data": {"kind": "postgres"}})")),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(
                      R"({"data": {"kind": "file", "path": "x"},
                          "algorithms": ["svd"]})")),
                  ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(
                      R"({"data": {"kind": "file", "path": "x"},
                          "missing_policy": "zero"})")),
                  ConfigError);
}

TEST_CASE("config files load with location on parse failure") {
  namespace fs = std::filesystem;
  const fs::path good = fs::temp_directory_path() / "report_io_cfg.json";
  std::ofstream(good) << R"({"data": {"kind": "file", "path": "x.csv"},
                             "epochs": 7})";
  CHECK(load_experiment_config(good.string()).epochs == 7);
  fs::remove(good);

  const fs::path bad = fs::temp_directory_path() / "report_io_bad.json";
  std::ofstream(bad) << "{oops";
  CHECK_THROWS_AS(load_experiment_config(bad.string()), ConfigError);
  fs::remove(bad);
  CHECK_THROWS_AS(load_experiment_config("/nonexistent/cfg.json"),
                  ConfigError);
}

TEST_CASE("report serialization reaches a byte-exact fixed point") {
  const ExperimentReport report = run_experiment(tiny_config());
  const std::string once = serialize_report_json(report);
  const std::string twice = serialize_report_json(parse_report_json(once));
  CHECK(once == twice);
  CHECK(once.find("\"format\": \"trimat-report\"") != std::string::npos);

  // The diverged cell shows its status and hides its metrics.
  const nlohmann::json j = nlohmann::json::parse(once);
  bool saw_diverged = false;
  for (const auto& cell : j.at("cells")) {
    if (cell.at("status") == "diverged") {
      saw_diverged = true;
      CHECK(cell.at("mae").is_null());
      CHECK(cell.at("divergence_epoch").is_number_integer());
    } else {
      CHECK(cell.at("status") == "ok");
      CHECK(cell.at("divergence_epoch").is_null());
    }
  }
  CHECK(saw_diverged);
  CHECK(j.at("config").at("seed") == 42);
  CHECK(j.at("footprint").at("ratio").is_number());
  CHECK(once.find("timestamp") == std::string::npos);
}

TEST_CASE("report parsing rejects foreign json") {
  CHECK_THROWS_AS(parse_report_json("{not json"), DataError);
  CHECK_THROWS_AS(parse_report_json(R"({"format": "something-else"})"),
                  SchemaError);
}

TEST_CASE("the table lists one row per cell with '-' for missing") {
  const ExperimentReport report = run_experiment(tiny_config());
  const std::string table = serialize_report_table(report);
  std::size_t lines = 0;
  for (char c : table)
    if (c == '\n') ++lines;
  CHECK(lines == 1 + report.cells.size());  // header + cells
  CHECK(table.find("algorithm\tlearning_rate\tstatus\tmae") == 0);
  CHECK(table.find("diverged@") != std::string::npos);
  CHECK(table.find("\t-") != std::string::npos);
  CHECK(table.find("classic-raw") != std::string::npos);
  CHECK(table.find("trimat-global") != std::string::npos);
}

TEST_CASE("plot files land under out_dir/plotdata") {
  namespace fs = std::filesystem;
  const ExperimentReport report = run_experiment(tiny_config());
  const fs::path dir = fs::temp_directory_path() / "report_io_plots";
  fs::remove_all(dir);
  write_plot_files(report, dir.string());

  const fs::path plot = dir / "plotdata";
  REQUIRE(fs::exists(plot / "popularity.tsv"));
  std::size_t tsvs = 0;
  for (const auto& entry : fs::directory_iterator(plot)) {
    ++tsvs;
    std::ifstream in(entry.path());
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header.find('\t') != std::string::npos);
  }
  // popularity + one loss curve per surviving cell + one rank/frequency
  // file per cell with recommendations.
  std::size_t ok_cells = 0;
  for (const CellResult& cell : report.cells)
    if (!cell.diverged) ++ok_cells;
  CHECK(tsvs == 1 + 2 * ok_cells);
  fs::remove_all(dir);
}
