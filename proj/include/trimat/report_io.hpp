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

#include <json.hpp>
#include <string>

#include "trimat/experiment.hpp"

namespace trimat {

// Rounds to six significant decimal digits (the precision all result
// metrics are reported at). Idempotent, so re-serializing a parsed report
// reproduces it byte for byte. Non-finite values pass through.
double round_6sig(double x);

// Config files may omit any field to take its default; unknown keys are
// rejected so typos never silently vanish. Errors are ConfigError.
nlohmann::ordered_json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::string& path);

// The report is deterministic: no timestamps or host details, config echoed
// at full precision, metrics rounded via round_6sig, missing values as
// null. serialize(parse(serialize(r))) == serialize(r).
std::string serialize_report_json(const ExperimentReport& report);
ExperimentReport parse_report_json(const std::string& text);

// Tab-separated per-cell summary for terminals; "-" marks missing values.
std::string serialize_report_table(const ExperimentReport& report);

// Writes the plot payloads (loss curves, rank/frequency points) as plain
// TSV files under <out_dir>/plotdata/. No plotting toolkit is assumed.
void write_plot_files(const ExperimentReport& report,
                      const std::string& out_dir);

}  // namespace trimat
