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

#include "qwa/random.hpp"
#include "qwa/upoly.hpp"
#include "qwa/wfa.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qwa {

struct ZeroResult {
  bool nonzero = false;
  /// Length of a word with nonzero value (nonzero verdicts only).
  std::size_t length = 0;
  /// Present whenever the procedure produced a word; `value` is its exact weight.
  std::optional<Word> witness;
  Rational value;
  /// For probably-zero verdicts, the lower bound on the probability of being right.
  Rational confidence = 1;
};

/// Randomized zeroness by evaluating the length-bounded language polynomial at a
/// random point of {1..k·n}^Σ per step, backward from η. Reports the length of
/// the first nonzero step but no word. `trials` independent runs give
/// confidence 1 − k^{−trials}.
ZeroResult zero_sz(const Wfa& a, std::uint64_t k, RandomSource& rng, std::size_t trials = 1);

/// As zero_sz, keeping every intermediate vector so that a triggering step can
/// be unwound into a word. Draws exactly the same random numbers as zero_sz.
ZeroResult zero_sz_cex(const Wfa& a, std::uint64_t k, RandomSource& rng, std::size_t trials = 1);

/// Position/symbol weights for the isolation test; positions are 1-based.
struct IsolationWeights {
  std::size_t positions = 0;
  std::size_t symbols = 0;
  std::vector<std::uint64_t> values;

  std::uint64_t at(std::size_t position, std::size_t symbol) const {
    return values[(position - 1) * symbols + symbol];
  }
  std::uint64_t& at(std::size_t position, std::size_t symbol) { return values[(position - 1) * symbols + symbol]; }
};

/// Weights drawn uniformly from {1..2·symbols·positions}, position-major.
IsolationWeights draw_isolation_weights(std::size_t positions, std::size_t symbols, RandomSource& rng);

/// P(x) = Σ_{|u| ≤ n} A(u) x^{wt(u)}, computed by Horner's rule from η.
UPoly isolation_polynomial(const Wfa& a, const IsolationWeights& weights);

/// Thrown when the weights did not isolate a unique minimum-weight word.
class IsolationFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads the minimum-weight word off the perturbations of P: σ sits at
/// position i iff bumping w_{i,σ} changes the lowest monomial. Each test uses
/// P' = P + (α N₁⋯N_{i−1}) M(σ) V_{i+1} (x^{w+1} − x^w) and the tests run in
/// parallel. Throws IsolationFailed if the result is not a word of nonzero value.
Word isolation_cex(const Wfa& a, const IsolationWeights& weights, const UPoly& p);

/// Reference for isolation_cex that recomputes P from scratch for every test.
Word isolation_cex_serial(const Wfa& a, const IsolationWeights& weights, const UPoly& p);

/// Isolation-lemma zeroness. Each of `trials` rounds draws fresh weights; a
/// nonzero polynomial settles the verdict and the witness is extracted with up
/// to `extraction_retries` fresh weight draws before falling back to the
/// deterministic search. Confidence after all-zero rounds is 1 − 2^{−trials}.
ZeroResult zero_isolation(const Wfa& a, std::size_t trials, RandomSource& rng,
                          std::size_t extraction_retries = 8);

enum class RandomizedMethod { sz, sz_cex, isolation };

struct RandomizedParams {
  std::uint64_t k = 10;
  std::size_t trials = 1;
  std::size_t extraction_retries = 8;
};

enum class EquivMethod { det, sz, sz_cex, isolation };

/// Dispatches to equivalent_det or equivalent_randomized.
EquivResult equivalent(const Wfa& b, const Wfa& c, EquivMethod method, const RandomizedParams& params,
                       RandomSource& rng);

/// Randomized equivalence through the difference automaton. Inequivalent
/// verdicts always carry a witness; for the plain sz method it is recovered by
/// replaying the same draws with counterexample tracking.
EquivResult equivalent_randomized(const Wfa& b, const Wfa& c, RandomizedMethod method,
                                  const RandomizedParams& params, RandomSource& rng);

}  // namespace qwa
