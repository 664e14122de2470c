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
#include <variant>

#include "trimat/mf_classic.hpp"
#include "trimat/trimat.hpp"

namespace trimat {

using AnyModel = std::variant<ClassicModel, TriMatModel>;

// Versioned JSON snapshots of trained models. Factor matrices are stored as
// flat row-major arrays; doubles round-trip exactly (shortest-representation
// printing). Structural problems on load throw SchemaError, unparsable
// files throw DataError.
nlohmann::ordered_json model_to_json(const ClassicModel& model);
nlohmann::ordered_json model_to_json(const TriMatModel& model);
AnyModel model_from_json(const nlohmann::json& j);

void save_model(const AnyModel& model, const std::string& path);
AnyModel load_model(const std::string& path);

}  // namespace trimat
