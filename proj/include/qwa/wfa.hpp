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

#include "qwa/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qwa {

class AlphabetMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered set of symbol labels; a symbol's id is its position.
class Alphabet {
 public:
  Alphabet() = default;
  /// Labels must be non-empty, free of whitespace and pairwise distinct.
  explicit Alphabet(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  bool empty() const { return labels_.empty(); }
  const std::string& label(std::size_t id) const { return labels_.at(id); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> find(std::string_view label) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> labels_;
};

using Word = std::vector<std::size_t>;

/// Space-separated labels; the empty word renders as "".
std::string format_word(const Alphabet& alphabet, const Word& w);
/// Inverse of format_word. Throws std::invalid_argument on unknown labels.
Word parse_word(const Alphabet& alphabet, std::string_view text);

/// Q-weighted automaton (n, Σ, M, α, η). n = 0 is the zero automaton.
class Wfa {
 public:
  Wfa() = default;
  Wfa(Alphabet alphabet, std::vector<QMatrix> trans, QVector init, QVector final);

  static Wfa zero(Alphabet alphabet);

  std::size_t states() const { return init_.length(); }
  const Alphabet& alphabet() const { return alphabet_; }
  const QMatrix& trans(std::size_t symbol) const { return trans_.at(symbol); }
  const std::vector<QMatrix>& transitions() const { return trans_; }
  const QVector& init() const { return init_; }
  const QVector& final() const { return final_; }

  friend bool operator==(const Wfa&, const Wfa&) = default;

 private:
  Alphabet alphabet_;
  std::vector<QMatrix> trans_;
  QVector init_{0, Orientation::row};
  QVector final_{0, Orientation::column};
};

enum class Verdict { equivalent, inequivalent, probably_equivalent };

const char* to_string(Verdict v);

struct Witness {
  Word word;
  Rational left;
  Rational right;
};

struct EquivResult {
  Verdict verdict = Verdict::equivalent;
  /// Lower bound on the probability that a "probably" verdict is right; 1 otherwise.
  Rational confidence = 1;
  std::optional<Witness> witness;
  /// Random point substituted for formal variables, when the method uses one.
  std::vector<std::uint64_t> substitution;
};

struct SpanBasis {
  /// Rows (forward) or columns (backward) spanning the space.
  QMatrix basis;
  /// words[i] generates vector i.
  std::vector<Word> words;
};

Rational evaluate(const Wfa& a, const Word& w);

/// Automaton for w ↦ b(w) − c(w).
Wfa difference(const Wfa& b, const Wfa& c);

/// Breadth-first closure of α under right multiplication by each M(σ).
SpanBasis forward_basis_det(const Wfa& a);
/// Breadth-first closure of η under left multiplication; the basis is stored as columns.
SpanBasis backward_basis_det(const Wfa& a);

/// A shortest word with nonzero value, or nullopt when the automaton is zero.
std::optional<Word> is_zero_det(const Wfa& a);

EquivResult equivalent_det(const Wfa& b, const Wfa& c);

/// Every word of length ≤ maxlen with its value, shortest first then by symbol id.
/// Throws BudgetExceeded when more than `budget` words would be listed.
std::vector<std::pair<Word, Rational>> enumerate_oracle(const Wfa& a, std::size_t maxlen,
                                                        std::size_t budget = 1000000);

/// Throws AlphabetMismatch unless both automata share an alphabet.
void require_same_alphabet(const Alphabet& a, const Alphabet& b);

}  // namespace qwa
