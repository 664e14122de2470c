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

// End-to-end tests that drive the installed binary the way a shell user
// would. The harness passes the binary path in TRIMAT_CLI and the checked-in
// sample data directory in TRIMAT_DATA_DIR.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path sandbox() {
  const fs::path dir = fs::temp_directory_path() / "trimat-cli-tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("TRIMAT_CLI");
  REQUIRE_MESSAGE(bin != nullptr, "TRIMAT_CLI must point at the binary");
  const fs::path out_file = sandbox() / "stdout.txt";
  const fs::path err_file = sandbox() / "stderr.txt";
  const std::string cmd = std::string("\"") + bin + "\" " + args + " > \"" +
                          out_file.string() + "\" 2> \"" +
                          err_file.string() + "\"";
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_file);
  result.err = slurp(err_file);
  return result;
}

std::string sample_csv() {
  const char* dir = std::getenv("TRIMAT_DATA_DIR");
  REQUIRE_MESSAGE(dir != nullptr, "TRIMAT_DATA_DIR must point at data/");
  return (fs::path(dir) / "sample50.csv").string();
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("running without a subcommand is a usage error") {
  const RunResult r = run_cli("");
  CHECK(r.exit_code == 1);
  CHECK(!r.err.empty());
}

TEST_CASE("an unknown subcommand is a usage error") {
  const RunResult r = run_cli("transmogrify");
  CHECK(r.exit_code == 1);
}

TEST_CASE("validate prints the dataset shape and context coverage") {
  const RunResult r = run_cli("validate \"" + sample_csv() + "\"");
  CAPTURE(r.err);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "rows 50"));
  CHECK(contains(r.out, "users 12"));
  CHECK(contains(r.out, "items 17"));
  CHECK(contains(r.out, "rating_min 1"));
  CHECK(contains(r.out, "rating_max 5"));
  CHECK(contains(r.out, "context.location "));
  CHECK(contains(r.out, "context.end_emotion "));
}

TEST_CASE("schema problems exit with the data error code") {
  const fs::path no_rating = sandbox() / "no_rating.csv";
  std::ofstream(no_rating)
      << "userID,itemID,location,mood,weather,season,daytype,endEmo\n"
         "u1,i1,1,1,1,1,1,1\n";
  const RunResult r = run_cli("validate \"" + no_rating.string() + "\"");
  CHECK(r.exit_code == 2);
  CHECK(contains(r.err, "rating"));

  const fs::path empty = sandbox() / "empty.csv";
  std::ofstream(empty) << "";
  CHECK(run_cli("validate \"" + empty.string() + "\"").exit_code == 2);

  CHECK(run_cli("validate \"" + (sandbox() / "missing.csv").string() + "\"")
            .exit_code == 2);
}

TEST_CASE("bad flag values exit with the usage error code") {
  CHECK(run_cli("train --data x.csv --algorithm trimat-global --lr banana")
            .exit_code == 1);
  CHECK(run_cli("footprint 10 20").exit_code == 1);  // missing positional
  CHECK(run_cli("train --algorithm not-a-model --data \"" + sample_csv() +
                "\"")
            .exit_code == 1);
}

TEST_CASE("footprint prints the parameter accounting") {
  const RunResult r = run_cli("footprint 121 1232 30");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "trimat_params 2833"));
  CHECK(contains(r.out, "classic_params 40590"));
  CHECK(contains(r.out, "ratio 0.0697955"));
  CHECK(contains(r.out, "verdict PASS"));
}

TEST_CASE("synth, train, evaluate round trip") {
  const fs::path csv = sandbox() / "chain.csv";
  const fs::path model = sandbox() / "chain_model.json";

  const RunResult s = run_cli(
      "synth --users 30 --items 40 --rows 900 --seed 3 --planted-seed 9 "
      "--out \"" + csv.string() + "\"");
  CAPTURE(s.err);
  REQUIRE(s.exit_code == 0);
  CHECK(contains(s.out, "rows 900"));
  REQUIRE(fs::exists(csv));

  const RunResult t = run_cli(
      "train --data \"" + csv.string() +
      "\" --algorithm trimat-global --lr 0.05 --epochs 40 --seed 4 "
      "--out \"" + model.string() + "\"");
  CAPTURE(t.err);
  REQUIRE(t.exit_code == 0);
  CHECK(contains(t.out, "algorithm trimat-global"));
  CHECK(contains(t.out, "final_train_loss"));
  REQUIRE(fs::exists(model));

  const RunResult e = run_cli("evaluate --model \"" + model.string() +
                              "\" --data \"" + csv.string() + "\"");
  CAPTURE(e.err);
  REQUIRE(e.exit_code == 0);
  CHECK(contains(e.out, "mae "));
  CHECK(contains(e.out, "recommendation_slope "));
  CHECK(contains(e.out, "dme "));
}

TEST_CASE("a model cannot be evaluated against mismatched data") {
  const fs::path csv = sandbox() / "small.csv";
  const fs::path model = sandbox() / "small_model.json";
  REQUIRE(run_cli("synth --users 5 --items 6 --rows 60 --seed 1 --out \"" +
                  csv.string() + "\"")
              .exit_code == 0);
  REQUIRE(run_cli("train --data \"" + csv.string() +
                  "\" --algorithm classic-raw --k 3 --lr 0.01 --epochs 5 "
                  "--out \"" + model.string() + "\"")
              .exit_code == 0);
  const RunResult r = run_cli("evaluate --model \"" + model.string() +
                              "\" --data \"" + sample_csv() + "\"");
  CHECK(r.exit_code == 1);
  CHECK(!r.err.empty());
}

TEST_CASE("gridsearch writes a deterministic report bundle") {
  const fs::path csv = sandbox() / "grid.csv";
  REQUIRE(run_cli("synth --users 25 --items 30 --rows 500 --seed 11 "
                  "--planted-seed 2 --out \"" + csv.string() + "\"")
              .exit_code == 0);

  const fs::path cfg = sandbox() / "grid_config.json";
  std::ofstream(cfg) << R"({
    "data": {"kind": "file", "path": ")" << csv.string() << R"("},
    "algorithms": ["classic-raw", "trimat-global"],
    "lr_grid": [0.005, 0.02],
    "epochs": 6,
    "baseline_k": 3,
    "top_k": 4,
    "seed": 42
  })";

  const fs::path out1 = sandbox() / "grid_out1";
  const fs::path out2 = sandbox() / "grid_out2";
  fs::remove_all(out1);
  fs::remove_all(out2);

  const RunResult r1 = run_cli("gridsearch --config \"" + cfg.string() +
                               "\" --out \"" + out1.string() + "\"");
  CAPTURE(r1.err);
  REQUIRE(r1.exit_code == 0);
  CHECK(contains(r1.out, "classic-raw"));
  CHECK(contains(r1.out, "footprint_ratio"));
  CHECK(contains(r1.out, "best "));
  REQUIRE(fs::exists(out1 / "report.json"));
  REQUIRE(fs::exists(out1 / "report.tsv"));
  REQUIRE(fs::exists(out1 / "plotdata" / "popularity.tsv"));

  REQUIRE(run_cli("gridsearch --config \"" + cfg.string() + "\" --out \"" +
                  out2.string() + "\"")
              .exit_code == 0);
  CHECK(slurp(out1 / "report.json") == slurp(out2 / "report.json"));

  // Flag overrides beat the config file and land in the report echo.
  const fs::path out3 = sandbox() / "grid_out3";
  fs::remove_all(out3);
  REQUIRE(run_cli("gridsearch --config \"" + cfg.string() + "\" --seed 7 "
                  "--epochs 4 --out \"" + out3.string() + "\"")
              .exit_code == 0);
  const std::string report = slurp(out3 / "report.json");
  CHECK(contains(report, "\"seed\": 7"));
  CHECK(contains(report, "\"epochs\": 4"));
}
