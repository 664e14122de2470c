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
#include <random>
#include <string_view>
#include <vector>

namespace trimat {

// Stable 64-bit hash used to derive sub-stream seeds. FNV-1a; the exact
// constants are part of the reproducibility contract, do not change them.
std::uint64_t stable_hash64(std::string_view bytes);
std::uint64_t stable_mix64(std::uint64_t x);

// Seeded random stream identified by (seed, label). The same pair yields the
// same sequence on every platform: mt19937_64 has a standardized output
// sequence, and all distribution code below is hand-rolled because the
// std::distribution adapters are implementation-defined.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view label);

  std::uint64_t next_u64();

  // Uniform in [0, 1), 53-bit mantissa.
  double next_double();

  // Uniform in [lo, hi).
  double uniform(double lo, double hi);

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  // Fisher-Yates; deterministic for a given stream state.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    if (v.size() < 2) return;
    for (std::size_t i = v.size() - 1; i > 0; --i) {
      std::size_t j = static_cast<std::size_t>(below(i + 1));
      std::swap(v[i], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace trimat
