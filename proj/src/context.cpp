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

#include "trimat/context.hpp"

#include <string>

#include "trimat/error.hpp"

namespace trimat {

ContextVector ContextVector::from_raw(
    const std::array<int, kNumContextFields>& raw) {
  ContextVector ctx;
  for (int f = 0; f < kNumContextFields; ++f) {
    if (raw[f] == -1) {
      ctx.missing[f] = true;
      ctx.code[f] = 0;
    } else if (raw[f] >= 1) {
      ctx.missing[f] = false;
      ctx.code[f] = raw[f];
    } else {
      throw DataError("invalid context code " + std::to_string(raw[f]) +
                      " for field " + std::string(kContextFieldNames[f]) +
                      " (expected a 1-based code or -1 for missing)");
    }
  }
  return ctx;
}

std::string_view to_string(MissingPolicy policy) {
  return policy == MissingPolicy::kFieldMean ? "mean" : "const05";
}

MissingPolicy missing_policy_from_string(std::string_view name) {
  if (name == "mean") return MissingPolicy::kFieldMean;
  if (name == "const05") return MissingPolicy::kConstant05;
  throw ConfigError("unknown missing-value policy '" + std::string(name) +
                    "' (expected mean or const05)");
}

ContextMatrix build_context_matrix(const ContextVector& ctx,
                                   const ContextStats& stats,
                                   MissingPolicy policy,
                                   OutOfRangePolicy range_policy) {
  ContextMatrix c;
  for (int f = 0; f < kNumContextFields; ++f) {
    double value;
    if (ctx.missing[f]) {
      value = policy == MissingPolicy::kFieldMean ? stats.mean_norm[f] : 0.5;
    } else {
      int max = stats.max_code[f];
      if (ctx.code[f] > max) {
        if (range_policy == OutOfRangePolicy::kError) {
          throw ContextOutOfRangeError(
              "context code " + std::to_string(ctx.code[f]) + " for field " +
              std::string(kContextFieldNames[f]) +
              " exceeds the training maximum " + std::to_string(max));
        }
        value = 1.0;
      } else {
        value = static_cast<double>(ctx.code[f]) / static_cast<double>(max);
      }
    }
    c(f / 2, f % 2) = value;
  }
  return c;
}

}  // namespace trimat
