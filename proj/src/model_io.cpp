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

#include "trimat/model_io.hpp"

#include <fstream>
#include <utility>

#include "trimat/error.hpp"

namespace trimat {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kModelVersion = 1;

template <typename Matrix>
ordered_json flat(const Matrix& m) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) arr.push_back(m(r, c));
  return arr;
}

template <typename Matrix>
void unflatten(const json& arr, Matrix& m, const char* name) {
  if (!arr.is_array() ||
      arr.size() != static_cast<std::size_t>(m.rows() * m.cols()))
    throw SchemaError(std::string("model file: field '") + name +
                      "' has the wrong length");
  std::size_t ix = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      m(r, c) = arr[ix++].get<double>();
}

ordered_json stats_to_json(const ContextStats& stats) {
  ordered_json j;
  j["max_code"] = stats.max_code;
  j["mean_norm"] = stats.mean_norm;
  return j;
}

ContextStats stats_from_json(const json& j) {
  ContextStats stats = ContextStats::neutral();
  const auto& maxes = j.at("max_code");
  const auto& means = j.at("mean_norm");
  if (!maxes.is_array() || maxes.size() != kNumContextFields ||
      !means.is_array() || means.size() != kNumContextFields)
    throw SchemaError("model file: context_stats arrays must have " +
                      std::to_string(kNumContextFields) + " entries");
  for (int f = 0; f < kNumContextFields; ++f) {
    stats.max_code[f] = maxes[f].get<int>();
    stats.mean_norm[f] = means[f].get<double>();
  }
  return stats;
}

ClassicModel classic_from_json(const json& j) {
  ClassicModel m;
  m.variant = classic_variant_from_string(j.at("variant").get<std::string>());
  m.k = j.at("k").get<int>();
  const int n_users = j.at("n_users").get<int>();
  const int n_items = j.at("n_items").get<int>();
  if (m.k < 1 || n_users < 1 || n_items < 1)
    throw SchemaError("model file: non-positive dimension");
  m.r_min = j.at("r_min").get<double>();
  m.r_max = j.at("r_max").get<double>();
  m.user_factors.resize(n_users, m.k);
  m.item_factors.resize(n_items, m.k);
  unflatten(j.at("user_factors"), m.user_factors, "user_factors");
  unflatten(j.at("item_factors"), m.item_factors, "item_factors");
  m.epoch_loss = j.at("epoch_loss").get<std::vector<double>>();
  return m;
}

TriMatModel trimat_from_json(const json& j) {
  TriMatModel m;
  m.mode = context_mode_from_string(j.at("mode").get<std::string>());
  m.scaling = rating_scaling_from_string(j.at("scaling").get<std::string>());
  m.missing_policy =
      missing_policy_from_string(j.at("missing_policy").get<std::string>());
  const int n_users = j.at("n_users").get<int>();
  const int n_items = j.at("n_items").get<int>();
  if (n_users < 1 || n_items < 1)
    throw SchemaError("model file: non-positive dimension");
  m.r_min = j.at("r_min").get<double>();
  m.r_max = j.at("r_max").get<double>();
  m.context_stats = stats_from_json(j.at("context_stats"));
  m.user_factors.resize(n_users, 3);
  m.item_factors.resize(n_items, 2);
  unflatten(j.at("user_factors"), m.user_factors, "user_factors");
  unflatten(j.at("item_factors"), m.item_factors, "item_factors");
  if (m.mode == ContextMode::kGlobal) {
    unflatten(j.at("context_global"), m.context_global, "context_global");
  } else {
    for (const auto& entry : j.at("context_table")) {
      const int user = entry.at("user").get<int>();
      const int item = entry.at("item").get<int>();
      if (user < 0 || user >= n_users || item < 0 || item >= n_items)
        throw SchemaError("model file: context_table index out of range");
      ContextMatrix c;
      unflatten(entry.at("c"), c, "context_table.c");
      m.context_per.emplace(std::make_pair(user, item), c);
    }
  }
  m.epoch_loss = j.at("epoch_loss").get<std::vector<double>>();
  return m;
}

}  // namespace

ordered_json model_to_json(const ClassicModel& model) {
  ordered_json j;
  j["format"] = "trimat-model";
  j["version"] = kModelVersion;
  j["family"] = "classic";
  j["variant"] = to_string(model.variant);
  j["k"] = model.k;
  j["n_users"] = model.user_factors.rows();
  j["n_items"] = model.item_factors.rows();
  j["r_min"] = model.r_min;
  j["r_max"] = model.r_max;
  j["user_factors"] = flat(model.user_factors);
  j["item_factors"] = flat(model.item_factors);
  j["epoch_loss"] = model.epoch_loss;
  return j;
}

ordered_json model_to_json(const TriMatModel& model) {
  ordered_json j;
  j["format"] = "trimat-model";
  j["version"] = kModelVersion;
  j["family"] = "trimat";
  j["mode"] = to_string(model.mode);
  j["scaling"] = to_string(model.scaling);
  j["missing_policy"] = to_string(model.missing_policy);
  j["n_users"] = model.user_factors.rows();
  j["n_items"] = model.item_factors.rows();
  j["r_min"] = model.r_min;
  j["r_max"] = model.r_max;
  j["context_stats"] = stats_to_json(model.context_stats);
  j["user_factors"] = flat(model.user_factors);
  j["item_factors"] = flat(model.item_factors);
  if (model.mode == ContextMode::kGlobal) {
    j["context_global"] = flat(model.context_global);
  } else {
    // std::map iteration gives a stable (user, item) order.
    ordered_json table = ordered_json::array();
    for (const auto& [key, c] : model.context_per) {
      ordered_json entry;
      entry["user"] = key.first;
      entry["item"] = key.second;
      entry["c"] = flat(c);
      table.push_back(std::move(entry));
    }
    j["context_table"] = std::move(table);
  }
  j["epoch_loss"] = model.epoch_loss;
  return j;
}

AnyModel model_from_json(const json& j) {
  try {
    if (j.value("format", "") != "trimat-model")
      throw SchemaError("model file: missing or wrong 'format' marker");
    const int version = j.at("version").get<int>();
    if (version != kModelVersion)
      throw SchemaError("model file: unsupported version " +
                        std::to_string(version));
    const std::string family = j.at("family").get<std::string>();
    if (family == "classic") return classic_from_json(j);
    if (family == "trimat") return trimat_from_json(j);
    throw SchemaError("model file: unknown family '" + family + "'");
  } catch (const json::exception& e) {
    throw SchemaError(std::string("model file: ") + e.what());
  }
}

void save_model(const AnyModel& model, const std::string& path) {
  const ordered_json j = std::visit(
      [](const auto& m) { return model_to_json(m); }, model);
  std::ofstream out(path);
  if (!out) throw DataError("cannot write model file: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw DataError("failed while writing model file: " + path);
}

AnyModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read model file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw DataError("model file is not valid JSON: " + std::string(e.what()));
  }
  return model_from_json(j);
}

}  // namespace trimat
