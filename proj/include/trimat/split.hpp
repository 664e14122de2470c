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
#include <utility>

#include "trimat/dataset.hpp"

namespace trimat {

// Interaction-level random split. Both halves keep the parent's ID maps and
// user/item counts; per-half rating range and context statistics are
// recomputed from the half's own rows.
struct SplitSpec {
  double train_fraction = 0.8;  // in (0, 1)
  std::uint64_t seed = 42;
};

// |train| = round(fraction * N). Deterministic under the seed; original
// interaction order is preserved within each half. A split that leaves
// either half empty is an error.
std::pair<Dataset, Dataset> split(const Dataset& ds, const SplitSpec& spec);

}  // namespace trimat
