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

#include "qwa/circuit.hpp"
#include "qwa/modular.hpp"
#include "qwa/random.hpp"
#include "qwa/vpa.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace qwa {

/// Circuit for α·S_L·η where S₀ = I + Σ M_int(ι) and
/// S_{i+1} = Σ_{a,b,γ} M_c(a,γ) S_i M_r(b,γ) + S_i S_i.
/// The circuit computes scale_base^scale_exponent · α·S_L·η, an integer.
struct LevelSumCircuit {
  Circuit circuit;
  BigInt scale_base = 1;
  std::uint64_t scale_exponent = 0;
};

/// Throws std::invalid_argument when the scale exponent would overflow.
LevelSumCircuit level_sum_circuit(const Wvpa& a, std::size_t levels);

/// α·S_L·η mod p. Throws std::invalid_argument if p divides a weight denominator.
std::uint64_t level_sum_mod(const Wvpa& a, std::size_t levels, std::uint64_t prime);

/// True if p divides the denominator of some weight of a.
bool prime_divides_denominator(const Wvpa& a, std::uint64_t prime);

struct VpaEquivResult {
  bool equivalent = true;
  /// Levels evaluated, n² for n the total trimmed state count unless overridden.
  std::size_t levels = 0;
  std::vector<std::uint64_t> primes;
  /// Nonzero residue of the level sum of (A(w) − B(w))², when inequivalent.
  std::optional<Residue> witness;
  std::optional<std::size_t> witness_level;
};

/// One-sided test: a nonzero residue proves inequivalence. Primes run in parallel.
VpaEquivResult vpa_equivalent(const Wvpa& a, const Wvpa& b, std::size_t trials, RandomSource& rng,
                              std::optional<std::size_t> levels = std::nullopt);
/// Single-threaded reference; returns the same result as vpa_equivalent.
VpaEquivResult vpa_equivalent_serial(const Wvpa& a, const Wvpa& b, std::size_t trials, RandomSource& rng,
                                     std::optional<std::size_t> levels = std::nullopt);

/// Alphabet of the circuit automata: call "c", return "r", internal "i".
VisiblyAlphabet acit_alphabet();
/// w₀ = ι, w_{n+1} = ι w_n for even n, w_{n+1} = c w_n r w_n for odd n.
Word acit_word(std::size_t depth);
/// M₀ = 1, M_{n+1} = 2M_n for even n, M_{n+1} = M_n² for odd n.
BigInt acit_normaliser(std::size_t depth);
/// Depth of the alternating normal form of c (inputs at height 0, + at odd
/// heights, * at even heights).
std::size_t acit_depth(const Circuit& c);

/// Automaton giving w_d the weight N/M_d, N the value of c, and every other
/// well-matched word weight 0. d defaults to acit_depth(c); a larger d pads
/// the circuit, so two circuits compare on a common word. Throws
/// std::invalid_argument for circuits with variables or subtraction, or d too small.
Wvpa acit_to_vpa(const Circuit& c, std::optional<std::size_t> depth = std::nullopt);

struct AcitResult {
  bool equal = true;
  std::vector<std::uint64_t> primes;
  /// Random values used for variables x0, x1, ...
  std::vector<std::uint64_t> substitution;
  /// Residues of both circuits at the first prime where they differ.
  std::optional<Residue> left;
  std::optional<Residue> right;
};

AcitResult acit_equal(const Circuit& c1, const Circuit& c2, std::size_t trials, RandomSource& rng);

}  // namespace qwa
