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

// Reference computations written against plain dense arrays, independent of
// the library's sparse kernels, plus seeded corpus generators.

#include "qwa/acit.hpp"
#include "qwa/pra.hpp"
#include "qwa/vpa.hpp"
#include "qwa/wfa.hpp"

#include <map>
#include <vector>

namespace qwa_test {

using qwa::BigInt;
using qwa::Rational;
using Dense = std::vector<std::vector<Rational>>;

Dense dense(const qwa::QMatrix& m);
Dense dense_identity(std::size_t n);
Dense dense_mul(const Dense& a, const Dense& b);
Dense dense_add(const Dense& a, const Dense& b);
std::size_t dense_rank(Dense m);

/// α·M(w₁)⋯M(w_k)·η by repeated dense vector-matrix products.
Rational naive_value(const qwa::Wfa& a, const qwa::Word& w);
/// All words of length exactly len over an alphabet of the given size, in
/// lexicographic order.
std::vector<qwa::Word> words_of_length(std::size_t symbols, std::size_t len);
std::vector<qwa::Word> words_up_to(std::size_t symbols, std::size_t maxlen);
/// Rank of the Hankel block H[x][y] = A(xy), |x|, |y| ≤ maxlen.
std::size_t hankel_rank(const qwa::Wfa& a, std::size_t maxlen);

/// Matrix semantics of a well-matched word by recursion on its top-level
/// factors. Returns nullopt for words that are not well-matched.
std::optional<Rational> naive_vpa_value(const qwa::Wvpa& a, const qwa::Word& w);
/// α·S_L·η with S₀ = I + ΣM_int, S_{i+1} = Σ M_c S_i M_r + S_i S_i, over Q.
Rational naive_level_sum(const qwa::Wvpa& a, std::size_t levels);

/// Exact circuit value by memoised recursion; variables are not allowed.
BigInt naive_circuit_value(const qwa::Circuit& c);

/// Expected reward vector by explicit path enumeration on an ε-free PRA.
std::vector<Rational> naive_expected_reward(const qwa::Pra& a, const qwa::Word& w);

// Generators.

/// p/q with |p| ≤ 2 and q ∈ {1, 2}.
Rational small_weight(qwa::RandomSource& rng);
qwa::Alphabet letters(std::size_t count);
/// Each transition entry is nonzero with probability 1/2.
qwa::Wfa random_wfa(qwa::RandomSource& rng, std::size_t states, std::size_t symbols);
/// diag(A, A) with α split as (λα, (1−λ)α): the same function, twice the states.
qwa::Wfa duplicate_blocks(const qwa::Wfa& a, const Rational& lambda);
/// A function-preserving copy of a with one extra state: state q is split in
/// two, the incoming weight is divided by `share`, 1 − `share`.
qwa::Wfa split_state(const qwa::Wfa& a, std::size_t q, const Rational& share);

/// ε-free PRA with sub-stochastic rows, rewards in {−1, 0, 1}^s.
qwa::Pra random_pra(qwa::RandomSource& rng, std::size_t states, std::size_t symbols, std::size_t rewards);
/// Distribution-preserving copy with state q split in two equal halves.
qwa::Pra split_pra_state(const qwa::Pra& a, std::size_t q);

/// Calls {c, d}, returns {r}, internals {i} (sizes chosen by the caller).
qwa::VisiblyAlphabet vpa_letters(std::size_t calls, std::size_t returns, std::size_t internals);
qwa::Wvpa random_wvpa(qwa::RandomSource& rng, const qwa::VisiblyAlphabet& sig, std::size_t states,
                      std::size_t stack);
/// One transition weight: (class, symbol within class, stack symbol, from, to).
struct TransitionRef {
  qwa::SymbolClass kind;
  std::size_t symbol;
  std::size_t stack;
  std::size_t from;
  std::size_t to;
};
/// Transitions whose weight influences the value of some well-matched word
/// of length ≤ maxlen (found by perturbing and re-evaluating).
std::vector<TransitionRef> influential_transitions(const qwa::Wvpa& a, std::size_t maxlen);
/// a with the given transition weight replaced.
qwa::Wvpa with_weight(const qwa::Wvpa& a, const TransitionRef& t, const Rational& value);

/// Random {+, *} circuit over 0/1 inputs whose depth is at most max_depth.
qwa::Circuit random_circuit(qwa::RandomSource& rng, std::size_t gates, std::size_t max_depth);

}  // namespace qwa_test
