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

#include "qwa/randomized.hpp"
#include "qwa/wfa.hpp"

#include <map>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace qwa {

/// Label reserved for silent transitions.
inline constexpr std::string_view kEpsilonLabel = "eps";

using RewardVector = std::vector<int>;

/// Reward vectors of one symbol, keyed by (from, to).
using RewardMatrix = std::map<std::pair<std::size_t, std::size_t>, RewardVector>;

class PraError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Probabilistic reward automaton (n, s, Σ, M, R, α, η).
///
/// Transition matrices are sub-stochastic, α is stochastic, η lies in [0,1]
/// and every reward component is −1, 0 or 1. A reward stored where the
/// transition probability is zero is dropped.
class Pra {
 public:
  Pra() = default;
  Pra(Alphabet alphabet, std::size_t reward_types, std::vector<QMatrix> trans, std::vector<RewardMatrix> rewards,
      QVector init, QVector final);

  std::size_t states() const { return init_.length(); }
  std::size_t reward_types() const { return reward_types_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const QMatrix& trans(std::size_t symbol) const { return trans_.at(symbol); }
  const RewardMatrix& rewards(std::size_t symbol) const { return rewards_.at(symbol); }
  /// Reward on (from, to) under symbol; all zeros when none is stored.
  RewardVector reward(std::size_t symbol, std::size_t from, std::size_t to) const;
  const QVector& init() const { return init_; }
  const QVector& final() const { return final_; }

  /// Id of the ε symbol, if the alphabet has one.
  std::optional<std::size_t> epsilon() const { return alphabet_.find(kEpsilonLabel); }
  /// The alphabet with ε removed; ids keep their relative order.
  Alphabet visible_alphabet() const;
  /// Maps a word over visible_alphabet() to ids of alphabet().
  Word to_full_word(const Word& visible) const;

  friend bool operator==(const Pra&, const Pra&) = default;

 private:
  Alphabet alphabet_;
  std::size_t reward_types_ = 0;
  std::vector<QMatrix> trans_;
  std::vector<RewardMatrix> rewards_;
  QVector init_{0, Orientation::row};
  QVector final_{0, Orientation::column};
};

/// Exact expected reward of w by enumerating all n^{|w|+1} paths.
std::vector<Rational> expected_reward_oracle(const Pra& a, const Word& w, std::size_t budget = 1000000);

/// 2n-state automaton (α⊗[1 0], M⊗I₂ + (M⊙R_j)⊗C, η⊗[0 1]ᵀ) whose value on w is
/// the expected j-th reward. Requires an ε-free automaton.
Wfa expectation_reduce(const Pra& a, std::size_t reward_index);

/// Expected j-th reward as an automaton over the visible alphabet. With ε the
/// reduced automaton is folded through E = (I − M′(ε))^{-1}, which sums the
/// first moment over all interleaved silent runs.
Wfa expected_reward_automaton(const Pra& a, std::size_t reward_index);

/// Compares expected rewards component by component; the witness carries the
/// two expected values of the first differing component.
EquivResult expectation_equivalent(const Pra& a, const Pra& b, EquivMethod method, const RandomizedParams& params,
                                   RandomSource& rng);

struct Monomial {
  Rational coefficient;
  std::vector<int> exponents;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Matrix of Laurent monomials a·t₁^{k₁}⋯t_s^{k_s}, zero entries omitted.
struct MonomialMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::map<std::pair<std::size_t, std::size_t>, Monomial> entries;

  /// Value at t = point.
  QMatrix substitute(const std::vector<Rational>& point) const;
};

/// Per-symbol monomial matrices with rewards as exponents.
std::vector<MonomialMatrix> laurent_automaton(const Pra& a);

struct EpsilonCheck {
  bool ok = true;
  /// An offending strongly connected component when !ok.
  std::vector<std::size_t> states;
};

/// Decides whether M(ε) has spectral radius < 1: every strongly connected
/// component that contains a cycle must lose mass, i.e. have a state whose
/// ε-row restricted to the component sums to less than 1.
EpsilonCheck epsilon_check(const Pra& a);

/// Distribution equivalence by random substitution t = r, r ∈ {1..2d}^s with
/// d = (s·n + 1)·n, n = n_a + n_b. Each trial folds ε via E = M′(ε)(r)^* and
/// compares the resulting automata exactly. A point at which some I − M′(ε)(r)
/// is singular is redrawn. Throws PraError when epsilon_check fails.
EquivResult distribution_equivalent(const Pra& a, const Pra& b, std::size_t trials, RandomSource& rng);

/// The substituted, ε-folded automaton over the visible alphabet.
Wfa substituted_automaton(const Pra& a, const std::vector<Rational>& point);

using RewardDistribution = std::map<RewardVector, Rational>;

/// Exact mass of each total reward over all paths of an ε-free automaton.
RewardDistribution reward_distribution_oracle(const Pra& a, const Word& w, std::size_t budget = 1000000);

}  // namespace qwa
