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

#include "qwa/wfa.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qwa {

enum class SymbolClass { call, ret, internal };

/// Σ = Σ_c ∪ Σ_r ∪ Σ_int. Word ids number calls first, then returns, then internals.
class VisiblyAlphabet {
 public:
  VisiblyAlphabet() = default;
  /// Throws std::invalid_argument if a label occurs in two classes or all are empty.
  VisiblyAlphabet(std::vector<std::string> calls, std::vector<std::string> returns,
                  std::vector<std::string> internals);

  const std::vector<std::string>& calls() const { return calls_; }
  const std::vector<std::string>& returns() const { return returns_; }
  const std::vector<std::string>& internals() const { return internals_; }
  /// All labels in id order.
  const Alphabet& symbols() const { return all_; }

  SymbolClass class_of(std::size_t id) const;
  /// Position of the symbol inside its class.
  std::size_t local_index(std::size_t id) const;
  std::size_t call_id(std::size_t i) const { return i; }
  std::size_t return_id(std::size_t i) const { return calls_.size() + i; }
  std::size_t internal_id(std::size_t i) const { return calls_.size() + returns_.size() + i; }

  friend bool operator==(const VisiblyAlphabet&, const VisiblyAlphabet&) = default;

 private:
  std::vector<std::string> calls_;
  std::vector<std::string> returns_;
  std::vector<std::string> internals_;
  Alphabet all_;
};

/// partner[i] is the matching position of a call or return, or −1 for an internal.
using Nesting = std::vector<long>;

std::optional<Nesting> is_well_matched(const VisiblyAlphabet& alphabet, const Word& w);

/// Q-weighted visibly pushdown automaton (n, α, η, Γ, M_c, M_r, M_int).
class Wvpa {
 public:
  Wvpa() = default;
  /// call[a][γ], ret[b][γ] and internal[ι] are n×n.
  Wvpa(VisiblyAlphabet alphabet, std::vector<std::string> stack, std::vector<std::vector<QMatrix>> call,
       std::vector<std::vector<QMatrix>> ret, std::vector<QMatrix> internal, QVector init, QVector final);

  std::size_t states() const { return init_.length(); }
  const VisiblyAlphabet& alphabet() const { return alphabet_; }
  const std::vector<std::string>& stack() const { return stack_; }
  const QMatrix& call(std::size_t a, std::size_t gamma) const { return call_.at(a).at(gamma); }
  const QMatrix& ret(std::size_t b, std::size_t gamma) const { return ret_.at(b).at(gamma); }
  const QMatrix& internal(std::size_t i) const { return internal_.at(i); }
  const QVector& init() const { return init_; }
  const QVector& final() const { return final_; }

  friend bool operator==(const Wvpa&, const Wvpa&) = default;

 private:
  VisiblyAlphabet alphabet_;
  std::vector<std::string> stack_;
  std::vector<std::vector<QMatrix>> call_;
  std::vector<std::vector<QMatrix>> ret_;
  std::vector<QMatrix> internal_;
  QVector init_{0, Orientation::row};
  QVector final_{0, Orientation::column};
};

/// M(w) for a well-matched word: M(uv) = M(u)M(v), M(aub) = Σ_γ M_c(a,γ) M(u) M_r(b,γ).
QMatrix vpa_matrix(const Wvpa& a, const Word& w);
/// α M(w) η. Throws std::invalid_argument if w is not well-matched.
Rational vpa_evaluate(const Wvpa& a, const Word& w);

/// Synchronous product: Kronecker transitions over the stack alphabet Γ_A × Γ_B,
/// pair (i, j) numbered i·|Γ_B| + j.
Wvpa vpa_product(const Wvpa& a, const Wvpa& b);

/// Drops states that cannot lie on a path from the support of α to the
/// support of η, and stack symbols whose matrices become zero. Values are unchanged.
Wvpa vpa_trim(const Wvpa& a);

/// Every well-matched word of length ≤ maxlen, shortest first.
std::vector<Word> well_matched_words(const VisiblyAlphabet& alphabet, std::size_t maxlen,
                                     std::size_t budget = 1000000);

}  // namespace qwa
