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

#include "qwa/vpa.hpp"

#include <set>
#include <stdexcept>

namespace qwa {

namespace {

std::vector<std::string> joined(const std::vector<std::string>& a, const std::vector<std::string>& b,
                                const std::vector<std::string>& c) {
  std::vector<std::string> out = a;
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.end());
  return out;
}

QMatrix restrict_matrix(const QMatrix& m, const std::vector<std::size_t>& keep) {
  std::vector<long> pos(m.rows(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<long>(i);
  QMatrix out(keep.size(), keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    SparseRow row;
    for (const auto& [j, x] : m.row_entries(keep[i])) {
      if (pos[j] >= 0) row.emplace_back(static_cast<std::size_t>(pos[j]), x);
    }
    out.set_row(i, std::move(row));
  }
  return out;
}

QVector restrict_vector(const QVector& v, const std::vector<std::size_t>& keep) {
  std::vector<Rational> values;
  for (std::size_t i : keep) values.push_back(v.at(i));
  return v.orientation() == Orientation::row ? QVector::row(values) : QVector::column(values);
}

}  // namespace

VisiblyAlphabet::VisiblyAlphabet(std::vector<std::string> calls, std::vector<std::string> returns,
                                 std::vector<std::string> internals)
    : calls_(std::move(calls)), returns_(std::move(returns)), internals_(std::move(internals)) {
  std::vector<std::string> all = joined(calls_, returns_, internals_);
  if (all.empty()) throw std::invalid_argument("visibly pushdown alphabet is empty");
  std::set<std::string> seen;
  for (const auto& l : all) {
    if (!seen.insert(l).second) throw std::invalid_argument("symbol '" + l + "' is listed in more than one class");
  }
  all_ = Alphabet(std::move(all));
}

SymbolClass VisiblyAlphabet::class_of(std::size_t id) const {
  if (id < calls_.size()) return SymbolClass::call;
  if (id < calls_.size() + returns_.size()) return SymbolClass::ret;
  if (id < all_.size()) return SymbolClass::internal;
  throw std::out_of_range("symbol id outside the alphabet");
}

std::size_t VisiblyAlphabet::local_index(std::size_t id) const {
  switch (class_of(id)) {
    case SymbolClass::call: return id;
    case SymbolClass::ret: return id - calls_.size();
    case SymbolClass::internal: return id - calls_.size() - returns_.size();
  }
  return 0;
}

std::optional<Nesting> is_well_matched(const VisiblyAlphabet& alphabet, const Word& w) {
  Nesting partner(w.size(), -1);
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= alphabet.symbols().size()) return std::nullopt;
    switch (alphabet.class_of(w[i])) {
      case SymbolClass::call: open.push_back(i); break;
      case SymbolClass::ret:
        if (open.empty()) return std::nullopt;
        partner[i] = static_cast<long>(open.back());
        partner[open.back()] = static_cast<long>(i);
        open.pop_back();
        break;
      case SymbolClass::internal: break;
    }
  }
  if (!open.empty()) return std::nullopt;
  return partner;
}

Wvpa::Wvpa(VisiblyAlphabet alphabet, std::vector<std::string> stack, std::vector<std::vector<QMatrix>> call,
           std::vector<std::vector<QMatrix>> ret, std::vector<QMatrix> internal, QVector init, QVector final)
    : alphabet_(std::move(alphabet)),
      stack_(std::move(stack)),
      call_(std::move(call)),
      ret_(std::move(ret)),
      internal_(std::move(internal)),
      init_(std::move(init)),
      final_(std::move(final)) {
  const std::size_t n = init_.length();
  if (init_.orientation() != Orientation::row) throw DimensionError("initial vector must be a row");
  if (final_.orientation() != Orientation::column) throw DimensionError("final vector must be a column");
  if (final_.length() != n) throw DimensionError("initial and final vectors differ in length");
  std::set<std::string> seen;
  for (const auto& g : stack_) {
    if (g.empty() || !seen.insert(g).second) {
      throw std::invalid_argument("stack symbols must be distinct and non-empty");
    }
  }
  auto check = [n](const QMatrix& m) {
    if (m.rows() != n || m.cols() != n) throw DimensionError("transition matrix is not n x n");
  };
  auto check_family = [&](const std::vector<std::vector<QMatrix>>& fam, std::size_t count, const char* what) {
    if (fam.size() != count) throw DimensionError(std::string("wrong number of ") + what + " symbols");
    for (const auto& per : fam) {
      if (per.size() != stack_.size()) {
        throw DimensionError(std::string(what) + " matrices must cover the stack alphabet");
      }
      for (const auto& m : per) check(m);
    }
  };
  check_family(call_, alphabet_.calls().size(), "call");
  check_family(ret_, alphabet_.returns().size(), "return");
  if (internal_.size() != alphabet_.internals().size()) throw DimensionError("wrong number of internal symbols");
  for (const auto& m : internal_) check(m);
}

QMatrix vpa_matrix(const Wvpa& a, const Word& w) {
  if (!is_well_matched(a.alphabet(), w)) throw std::invalid_argument("word is not well-matched");
  const std::size_t n = a.states();
  const VisiblyAlphabet& sig = a.alphabet();
  std::vector<std::pair<std::size_t, QMatrix>> pending;
  QMatrix acc = QMatrix::identity(n);
  for (std::size_t s : w) {
    switch (sig.class_of(s)) {
      case SymbolClass::internal: acc = acc * a.internal(sig.local_index(s)); break;
      case SymbolClass::call:
        pending.emplace_back(sig.local_index(s), std::move(acc));
        acc = QMatrix::identity(n);
        break;
      case SymbolClass::ret: {
        auto [c, prev] = std::move(pending.back());
        pending.pop_back();
        const std::size_t r = sig.local_index(s);
        QMatrix wrapped(n, n);
        for (std::size_t g = 0; g < a.stack().size(); ++g) {
          const QMatrix& mc = a.call(c, g);
          const QMatrix& mr = a.ret(r, g);
          if (mc.is_zero() || mr.is_zero()) continue;
          wrapped += mc * acc * mr;
        }
        acc = prev * wrapped;
        break;
      }
    }
  }
  return acc;
}

Rational vpa_evaluate(const Wvpa& a, const Word& w) {
  return dot(a.init() * vpa_matrix(a, w), a.final());
}

Wvpa vpa_product(const Wvpa& a, const Wvpa& b) {
  if (!(a.alphabet() == b.alphabet())) throw AlphabetMismatch("automata are over different alphabets");
  const VisiblyAlphabet& sig = a.alphabet();
  std::vector<std::string> stack;
  for (const auto& ga : a.stack()) {
    for (const auto& gb : b.stack()) stack.push_back("(" + ga + "," + gb + ")");
  }
  auto pair_family = [&](auto get_a, auto get_b, std::size_t count) {
    std::vector<std::vector<QMatrix>> fam(count);
    for (std::size_t x = 0; x < count; ++x) {
      for (std::size_t i = 0; i < a.stack().size(); ++i) {
        for (std::size_t j = 0; j < b.stack().size(); ++j) fam[x].push_back(kron(get_a(x, i), get_b(x, j)));
      }
    }
    return fam;
  };
  auto call = pair_family([&](std::size_t x, std::size_t g) -> const QMatrix& { return a.call(x, g); },
                          [&](std::size_t x, std::size_t g) -> const QMatrix& { return b.call(x, g); },
                          sig.calls().size());
  auto ret = pair_family([&](std::size_t x, std::size_t g) -> const QMatrix& { return a.ret(x, g); },
                         [&](std::size_t x, std::size_t g) -> const QMatrix& { return b.ret(x, g); },
                         sig.returns().size());
  std::vector<QMatrix> internal;
  for (std::size_t i = 0; i < sig.internals().size(); ++i) internal.push_back(kron(a.internal(i), b.internal(i)));
  return Wvpa(sig, std::move(stack), std::move(call), std::move(ret), std::move(internal),
              kron(a.init(), b.init()), kron(a.final(), b.final()));
}

Wvpa vpa_trim(const Wvpa& a) {
  const std::size_t n = a.states();
  const VisiblyAlphabet& sig = a.alphabet();
  std::vector<std::vector<std::size_t>> succ(n), pred(n);
  auto add_edges = [&](const QMatrix& m) {
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& [j, x] : m.row_entries(i)) {
        succ[i].push_back(j);
        pred[j].push_back(i);
      }
    }
  };
  for (std::size_t c = 0; c < sig.calls().size(); ++c) {
    for (std::size_t g = 0; g < a.stack().size(); ++g) add_edges(a.call(c, g));
  }
  for (std::size_t r = 0; r < sig.returns().size(); ++r) {
    for (std::size_t g = 0; g < a.stack().size(); ++g) add_edges(a.ret(r, g));
  }
  for (std::size_t i = 0; i < sig.internals().size(); ++i) add_edges(a.internal(i));
  auto sweep = [n](const QVector& seeds, const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> todo;
    for (const auto& [i, x] : seeds.entries()) {
      seen[i] = 1;
      todo.push_back(i);
    }
    while (!todo.empty()) {
      std::size_t v = todo.back();
      todo.pop_back();
      for (std::size_t w : adj[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          todo.push_back(w);
        }
      }
    }
    return seen;
  };
  std::vector<char> fwd = sweep(a.init(), succ);
  std::vector<char> bwd = sweep(a.final(), pred);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < n; ++i) {
    if (fwd[i] && bwd[i]) keep.push_back(i);
  }
  std::vector<std::vector<QMatrix>> call(sig.calls().size()), ret(sig.returns().size());
  std::vector<std::string> stack;
  for (std::size_t g = 0; g < a.stack().size(); ++g) {
    std::vector<QMatrix> cs, rs;
    bool used_call = false, used_ret = false;
    for (std::size_t c = 0; c < sig.calls().size(); ++c) {
      cs.push_back(restrict_matrix(a.call(c, g), keep));
      used_call = used_call || !cs.back().is_zero();
    }
    for (std::size_t r = 0; r < sig.returns().size(); ++r) {
      rs.push_back(restrict_matrix(a.ret(r, g), keep));
      used_ret = used_ret || !rs.back().is_zero();
    }
    // A symbol that is never both pushed and popped contributes nothing.
    if (!used_call || !used_ret) continue;
    stack.push_back(a.stack()[g]);
    for (std::size_t c = 0; c < cs.size(); ++c) call[c].push_back(std::move(cs[c]));
    for (std::size_t r = 0; r < rs.size(); ++r) ret[r].push_back(std::move(rs[r]));
  }
  std::vector<QMatrix> internal;
  for (std::size_t i = 0; i < sig.internals().size(); ++i) internal.push_back(restrict_matrix(a.internal(i), keep));
  return Wvpa(sig, std::move(stack), std::move(call), std::move(ret), std::move(internal),
              restrict_vector(a.init(), keep), restrict_vector(a.final(), keep));
}

std::vector<Word> well_matched_words(const VisiblyAlphabet& alphabet, std::size_t maxlen, std::size_t budget) {
  // Breadth-first over prefixes, tracking the number of open calls so dead
  // prefixes (more open calls than remaining letters) are pruned.
  std::vector<Word> out;
  std::vector<std::pair<Word, std::size_t>> frontier{{Word{}, 0}};
  const std::size_t k = alphabet.symbols().size();
  for (std::size_t len = 0; len <= maxlen; ++len) {
    std::vector<std::pair<Word, std::size_t>> next;
    for (auto& [w, depth] : frontier) {
      if (depth == 0) {
        out.push_back(w);
        if (out.size() > budget) throw BudgetExceeded("too many well-matched words");
      }
      if (len == maxlen) continue;
      for (std::size_t s = 0; s < k; ++s) {
        std::size_t d = depth;
        switch (alphabet.class_of(s)) {
          case SymbolClass::call: ++d; break;
          case SymbolClass::ret:
            if (d == 0) continue;
            --d;
            break;
          case SymbolClass::internal: break;
        }
        if (d > maxlen - len - 1) continue;
        Word ws = w;
        ws.push_back(s);
        next.emplace_back(std::move(ws), d);
        if (next.size() > budget) throw BudgetExceeded("too many well-matched prefixes");
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace qwa
