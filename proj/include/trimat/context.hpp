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

#include <Eigen/Dense>
#include <array>
#include <string_view>

namespace trimat {

// The six ordinal context fields, in the order they fill the 3x2 context
// matrix (row-major):
//
//   [[location, mood], [weather, season], [daytype, end_emotion]]
//
// Field f maps to matrix entry (f / 2, f % 2).
inline constexpr int kNumContextFields = 6;
inline constexpr std::array<std::string_view, kNumContextFields>
    kContextFieldNames = {"location", "mood",    "weather",
                          "season",   "daytype", "end_emotion"};

using ContextMatrix = Eigen::Matrix<double, 3, 2>;

// One interaction's context. Codes are 1-based ordinals; a raw code of -1
// marks the field as missing (the LDOS-CoMoDa convention).
struct ContextVector {
  std::array<int, kNumContextFields> code{};     // valid only where !missing
  std::array<bool, kNumContextFields> missing{};

  // Builds from raw codes, applying the -1-means-missing rule. Any other
  // non-positive code is rejected.
  static ContextVector from_raw(const std::array<int, kNumContextFields>& raw);

  // Convenience for fully-present contexts.
  static ContextVector of(const std::array<int, kNumContextFields>& codes) {
    return from_raw(codes);
  }

  // A context with every field missing; the missing-value policy decides
  // what such an interaction looks like to the model.
  static ContextVector all_missing() {
    ContextVector ctx;
    ctx.code.fill(-1);
    ctx.missing.fill(true);
    return ctx;
  }

  bool any_missing() const {
    for (bool m : missing)
      if (m) return true;
    return false;
  }
};

// Per-field statistics over a training split: the maximum observed code
// (the normalization denominator) and the mean of the observed normalized
// values (the default fill for missing fields). Fields never observed fall
// back to max_code 1 and mean_norm 0.5.
struct ContextStats {
  std::array<int, kNumContextFields> max_code;
  std::array<double, kNumContextFields> mean_norm;

  static ContextStats neutral() {
    ContextStats s;
    s.max_code.fill(1);
    s.mean_norm.fill(0.5);
    return s;
  }
};

enum class MissingPolicy {
  kFieldMean,   // per-field mean of observed normalized values
  kConstant05,  // fill with 0.5
};

// "mean" / "const05". The parser throws ConfigError on anything else.
std::string_view to_string(MissingPolicy policy);
MissingPolicy missing_policy_from_string(std::string_view name);

enum class OutOfRangePolicy {
  kError,       // code above the training maximum throws
  kClampToOne,  // treat as the maximum (normalized value 1.0)
};

// Builds the 3x2 context matrix: present fields are code / max_code, missing
// fields filled per policy. All entries land in [0, 1]. A present code above
// its training maximum signals a code unseen in training; the range policy
// decides whether that throws or clamps.
ContextMatrix build_context_matrix(
    const ContextVector& ctx, const ContextStats& stats, MissingPolicy policy,
    OutOfRangePolicy range_policy = OutOfRangePolicy::kError);

}  // namespace trimat
