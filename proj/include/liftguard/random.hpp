// Copyright 2026 The Liftguard Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LIFTGUARD_RANDOM_HPP_
#define LIFTGUARD_RANDOM_HPP_

#include <cstdint>

namespace liftguard {

// Counter-based pseudo-random stream (splitmix64). Each (seed, draw, attempt)
// triple opens an independent stream, so draws can be materialized lazily and
// in any order while staying bit-reproducible across platforms; the standard
// library distributions are avoided on purpose because their algorithms are
// implementation-defined.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t substream = 0)
      : state_(mix(mix(seed ^ 0x9E3779B97F4A7C15ULL) ^ stream) ^
               mix(substream + 0xD1B54A32D192ED03ULL)) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform double in (0, 1].
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace liftguard

#endif  // LIFTGUARD_RANDOM_HPP_
