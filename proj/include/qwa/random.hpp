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

namespace qwa {

/// Deterministic 64-bit generator (splitmix64). The state advances by
/// 0x9E3779B97F4A7C15 per draw and each output is the splitmix64 finalizer of
/// the new state, so sequences are identical on every platform.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next();

  /// Uniform draw from the closed range [lo, hi], unbiased by rejection.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

  /// Independent stream number i derived from the original seed:
  /// seed_i = mix(seed + (i + 1) * 0x9E3779B97F4A7C15).
  RandomSource split(std::uint64_t index) const;

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

std::uint64_t splitmix64_mix(std::uint64_t z);

}  // namespace qwa
