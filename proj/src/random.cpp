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

#include "qwa/random.hpp"

#include <stdexcept>

namespace qwa {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t RandomSource::next() {
  state_ += kGolden;
  return splitmix64_mix(state_);
}

std::uint64_t RandomSource::uniform(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw std::invalid_argument("uniform: empty range");
  const std::uint64_t span = hi - lo;
  if (span == ~std::uint64_t{0}) return next();
  const std::uint64_t range = span + 1;
  // Values below this threshold would bias the low residues.
  const std::uint64_t threshold = (0 - range) % range;
  for (;;) {
    std::uint64_t x = next();
    if (x >= threshold) return lo + x % range;
  }
}

RandomSource RandomSource::split(std::uint64_t index) const {
  return RandomSource(splitmix64_mix(seed_ + (index + 1) * kGolden));
}

}  // namespace qwa
