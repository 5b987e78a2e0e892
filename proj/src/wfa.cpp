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

#include "qwa/wfa.hpp"

#include "qwa/elimination.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

namespace qwa {

Alphabet::Alphabet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw std::invalid_argument("empty symbol label");
    for (unsigned char ch : l) {
      if (std::isspace(ch) || !std::isprint(ch)) {
        throw std::invalid_argument("symbol label '" + l + "' contains whitespace or control characters");
      }
    }
    if (!seen.insert(l).second) throw std::invalid_argument("duplicate symbol label '" + l + "'");
  }
}

std::optional<std::size_t> Alphabet::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

std::string format_word(const Alphabet& alphabet, const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ' ';
    out += alphabet.label(w[i]);
  }
  return out;
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  std::istringstream in{std::string(text)};
  Word w;
  std::string tok;
  while (in >> tok) {
    auto id = alphabet.find(tok);
    if (!id) throw std::invalid_argument("unknown symbol '" + tok + "'");
    w.push_back(*id);
  }
  return w;
}

void require_same_alphabet(const Alphabet& a, const Alphabet& b) {
  if (!(a == b)) throw AlphabetMismatch("automata are over different alphabets");
}

Wfa::Wfa(Alphabet alphabet, std::vector<QMatrix> trans, QVector init, QVector final)
    : alphabet_(std::move(alphabet)), trans_(std::move(trans)), init_(std::move(init)), final_(std::move(final)) {
  const std::size_t n = init_.length();
  if (init_.orientation() != Orientation::row) throw DimensionError("initial vector must be a row");
  if (final_.orientation() != Orientation::column) throw DimensionError("final vector must be a column");
  if (final_.length() != n) throw DimensionError("initial and final vectors differ in length");
  if (trans_.size() != alphabet_.size()) throw DimensionError("one transition matrix per symbol is required");
  for (const auto& m : trans_) {
    if (m.rows() != n || m.cols() != n) throw DimensionError("transition matrix is not n x n");
  }
}

Wfa Wfa::zero(Alphabet alphabet) {
  std::vector<QMatrix> trans(alphabet.size(), QMatrix(0, 0));
  return Wfa(std::move(alphabet), std::move(trans), QVector(0, Orientation::row),
             QVector(0, Orientation::column));
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::equivalent: return "equivalent";
    case Verdict::inequivalent: return "inequivalent";
    case Verdict::probably_equivalent: return "probably_equivalent";
  }
  return "?";
}

Rational evaluate(const Wfa& a, const Word& w) {
  QVector v = a.init();
  for (std::size_t s : w) {
    if (s >= a.alphabet().size()) throw std::out_of_range("symbol id outside the alphabet");
    if (v.is_zero()) return 0;
    v = v * a.trans(s);
  }
  return dot(v, a.final());
}

Wfa difference(const Wfa& b, const Wfa& c) {
  require_same_alphabet(b.alphabet(), c.alphabet());
  std::vector<QMatrix> trans;
  trans.reserve(b.alphabet().size());
  for (std::size_t s = 0; s < b.alphabet().size(); ++s) trans.push_back(direct_sum(b.trans(s), c.trans(s)));
  return Wfa(b.alphabet(), std::move(trans), concat(b.init(), -c.init()), concat(b.final(), c.final()));
}

namespace {

// Shared breadth-first closure. `step` maps a kept vector and a symbol to the
// next candidate; `stop` is consulted on every kept vector and ends the search
// early when it returns true.
template <class Step, class Stop>
SpanBasis closure(const QVector& seed, std::size_t symbols, Step step, Stop stop) {
  auto as_row = [](const QVector& v) { return v.orientation() == Orientation::row ? v : v.transposed(); };
  RowEchelon echelon(seed.length());
  std::vector<QVector> kept;
  SpanBasis out;
  bool done = !echelon.insert(as_row(seed));
  if (!done) {
    kept.push_back(seed);
    out.words.push_back({});
    done = stop(seed);
  }
  for (std::size_t head = 0; !done && head < kept.size(); ++head) {
    for (std::size_t s = 0; !done && s < symbols; ++s) {
      QVector next = step(kept[head], s);
      if (!echelon.insert(as_row(next))) continue;
      Word w = out.words[head];
      w.push_back(s);
      kept.push_back(std::move(next));
      out.words.push_back(std::move(w));
      done = stop(kept.back());
    }
  }
  if (seed.orientation() == Orientation::row) {
    out.basis = QMatrix::from_rows(kept, seed.length());
  } else {
    out.basis = QMatrix::from_columns(kept, seed.length());
  }
  return out;
}

}  // namespace

SpanBasis forward_basis_det(const Wfa& a) {
  return closure(
      a.init(), a.alphabet().size(), [&](const QVector& v, std::size_t s) { return v * a.trans(s); },
      [](const QVector&) { return false; });
}

SpanBasis backward_basis_det(const Wfa& a) {
  SpanBasis out = closure(
      a.final(), a.alphabet().size(), [&](const QVector& v, std::size_t s) { return a.trans(s) * v; },
      [](const QVector&) { return false; });
  // Column j is M(w)η, which reads w left to right as it was built right to left.
  for (auto& w : out.words) std::reverse(w.begin(), w.end());
  return out;
}

std::optional<Word> is_zero_det(const Wfa& a) {
  bool found = false;
  SpanBasis b = closure(
      a.init(), a.alphabet().size(), [&](const QVector& v, std::size_t s) { return v * a.trans(s); },
      [&](const QVector& v) { return found = !is_zero(dot(v, a.final())); });
  if (!found) return std::nullopt;
  return b.words.back();
}

EquivResult equivalent_det(const Wfa& b, const Wfa& c) {
  auto w = is_zero_det(difference(b, c));
  EquivResult r;
  if (!w) return r;
  r.verdict = Verdict::inequivalent;
  r.witness = Witness{*w, evaluate(b, *w), evaluate(c, *w)};
  return r;
}

std::vector<std::pair<Word, Rational>> enumerate_oracle(const Wfa& a, std::size_t maxlen, std::size_t budget) {
  const std::size_t k = a.alphabet().size();
  std::size_t total = 0;
  std::size_t layer = 1;
  for (std::size_t len = 0; len <= maxlen; ++len) {
    total += layer;
    if (total > budget) throw BudgetExceeded("enumeration would exceed the word budget");
    if (len < maxlen) {
      if (k != 0 && layer > budget / k) throw BudgetExceeded("enumeration would exceed the word budget");
      layer *= k;
    }
    if (layer == 0) break;
  }
  std::vector<std::pair<Word, Rational>> out;
  out.reserve(total);
  // Forward vectors of the current layer are kept so each word costs one product.
  std::vector<std::pair<Word, QVector>> frontier{{Word{}, a.init()}};
  for (std::size_t len = 0; len <= maxlen && !frontier.empty(); ++len) {
    std::vector<std::pair<Word, QVector>> next;
    for (auto& [w, v] : frontier) {
      out.emplace_back(w, dot(v, a.final()));
      if (len == maxlen) continue;
      for (std::size_t s = 0; s < k; ++s) {
        Word ws = w;
        ws.push_back(s);
        next.emplace_back(std::move(ws), v * a.trans(s));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace qwa
