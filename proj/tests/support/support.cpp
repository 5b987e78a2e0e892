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

#include "support.hpp"

#include <functional>
#include <stdexcept>

namespace qwa_test {

using namespace qwa;

Dense dense(const QMatrix& m) {
  Dense d(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) d[i][j] = m.at(i, j);
  }
  return d;
}

Dense dense_identity(std::size_t n) {
  Dense d(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 1;
  return d;
}

Dense dense_mul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Dense c(n, std::vector<Rational>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  }
  return c;
}

Dense dense_add(const Dense& a, const Dense& b) {
  Dense c = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] += b[i][j];
  }
  return c;
}

std::size_t dense_rank(Dense m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

Rational naive_value(const Wfa& a, const Word& w) {
  const std::size_t n = a.states();
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = a.init().at(i);
  for (std::size_t s : w) {
    std::vector<Rational> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) y[j] += x[i] * a.trans(s).at(i, j);
    }
    x = std::move(y);
  }
  Rational v = 0;
  for (std::size_t i = 0; i < n; ++i) v += x[i] * a.final().at(i);
  return v;
}

std::vector<Word> words_of_length(std::size_t symbols, std::size_t len) {
  std::vector<Word> out{Word{}};
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<Word> next;
    for (const Word& w : out) {
      for (std::size_t s = 0; s < symbols; ++s) {
        Word v = w;
        v.push_back(s);
        next.push_back(std::move(v));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<Word> words_up_to(std::size_t symbols, std::size_t maxlen) {
  std::vector<Word> out;
  for (std::size_t len = 0; len <= maxlen; ++len) {
    for (auto& w : words_of_length(symbols, len)) out.push_back(std::move(w));
  }
  return out;
}

std::size_t hankel_rank(const Wfa& a, std::size_t maxlen) {
  std::vector<Word> ws = words_up_to(a.alphabet().size(), maxlen);
  Dense h(ws.size(), std::vector<Rational>(ws.size()));
  for (std::size_t i = 0; i < ws.size(); ++i) {
    for (std::size_t j = 0; j < ws.size(); ++j) {
      Word xy = ws[i];
      xy.insert(xy.end(), ws[j].begin(), ws[j].end());
      h[i][j] = naive_value(a, xy);
    }
  }
  return dense_rank(std::move(h));
}

std::optional<Rational> naive_vpa_value(const Wvpa& a, const Word& w) {
  const VisiblyAlphabet& sig = a.alphabet();
  std::vector<std::size_t> partner(w.size(), 0);
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < w.size(); ++i) {
    SymbolClass k = sig.class_of(w[i]);
    if (k == SymbolClass::call) {
      open.push_back(i);
    } else if (k == SymbolClass::ret) {
      if (open.empty()) return std::nullopt;
      partner[open.back()] = i;
      open.pop_back();
    }
  }
  if (!open.empty()) return std::nullopt;
  const std::size_t n = a.states();
  std::function<Dense(std::size_t, std::size_t)> matrix = [&](std::size_t lo, std::size_t hi) {
    Dense acc = dense_identity(n);
    for (std::size_t i = lo; i < hi;) {
      SymbolClass k = sig.class_of(w[i]);
      if (k == SymbolClass::internal) {
        acc = dense_mul(acc, dense(a.internal(sig.local_index(w[i]))));
        ++i;
        continue;
      }
      std::size_t j = partner[i];
      Dense inner = matrix(i + 1, j);
      Dense sum(n, std::vector<Rational>(n));
      for (std::size_t g = 0; g < a.stack().size(); ++g) {
        Dense t = dense_mul(dense(a.call(sig.local_index(w[i]), g)), inner);
        sum = dense_add(sum, dense_mul(t, dense(a.ret(sig.local_index(w[j]), g))));
      }
      acc = dense_mul(acc, sum);
      i = j + 1;
    }
    return acc;
  };
  Dense m = matrix(0, w.size());
  Rational v = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) v += a.init().at(i) * m[i][j] * a.final().at(j);
  }
  return v;
}

Rational naive_level_sum(const Wvpa& a, std::size_t levels) {
  const VisiblyAlphabet& sig = a.alphabet();
  const std::size_t n = a.states();
  Dense s = dense_identity(n);
  for (std::size_t i = 0; i < sig.internals().size(); ++i) s = dense_add(s, dense(a.internal(i)));
  for (std::size_t l = 0; l < levels; ++l) {
    Dense next = dense_mul(s, s);
    for (std::size_t c = 0; c < sig.calls().size(); ++c) {
      for (std::size_t r = 0; r < sig.returns().size(); ++r) {
        for (std::size_t g = 0; g < a.stack().size(); ++g) {
          next = dense_add(next, dense_mul(dense_mul(dense(a.call(c, g)), s), dense(a.ret(r, g))));
        }
      }
    }
    s = std::move(next);
  }
  Rational v = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) v += a.init().at(i) * s[i][j] * a.final().at(j);
  }
  return v;
}

BigInt naive_circuit_value(const Circuit& c) {
  std::map<std::size_t, BigInt> memo;
  std::function<BigInt(std::size_t)> value = [&](std::size_t g) -> BigInt {
    if (auto it = memo.find(g); it != memo.end()) return it->second;
    const Gate& gate = c.gates()[g];
    BigInt v;
    switch (gate.op) {
      case GateOp::zero: v = 0; break;
      case GateOp::one: v = 1; break;
      case GateOp::add: v = value(gate.lhs) + value(gate.rhs); break;
      case GateOp::sub: v = value(gate.lhs) - value(gate.rhs); break;
      case GateOp::mul: v = value(gate.lhs) * value(gate.rhs); break;
      case GateOp::var: throw std::invalid_argument("variable gate");
    }
    memo.emplace(g, v);
    return v;
  };
  return value(c.output());
}

std::vector<Rational> naive_expected_reward(const Pra& a, const Word& w) {
  const std::size_t n = a.states();
  std::vector<Rational> total(a.reward_types());
  std::vector<std::size_t> path(w.size() + 1);
  std::function<void(std::size_t, Rational, std::vector<int>)> walk = [&](std::size_t pos, Rational p,
                                                                          std::vector<int> reward) {
    if (p == 0) return;
    if (pos == w.size()) {
      Rational q = p * a.final().at(path[pos]);
      for (std::size_t j = 0; j < reward.size(); ++j) total[j] += q * reward[j];
      return;
    }
    for (std::size_t t = 0; t < n; ++t) {
      Rational step = a.trans(w[pos]).at(path[pos], t);
      if (step == 0) continue;
      std::vector<int> r = reward;
      std::vector<int> add = a.reward(w[pos], path[pos], t);
      for (std::size_t j = 0; j < r.size(); ++j) r[j] += add[j];
      path[pos + 1] = t;
      walk(pos + 1, p * step, r);
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    path[0] = s;
    walk(0, a.init().at(s), std::vector<int>(a.reward_types(), 0));
  }
  return total;
}

Rational small_weight(RandomSource& rng) {
  auto p = static_cast<long>(rng.uniform(0, 4)) - 2;
  auto q = static_cast<long>(rng.uniform(1, 2));
  return make_rational(p, q);
}

Alphabet letters(std::size_t count) {
  std::vector<std::string> ls;
  for (std::size_t i = 0; i < count; ++i) ls.push_back(std::string(1, static_cast<char>('a' + i)));
  return Alphabet(ls);
}

Wfa random_wfa(RandomSource& rng, std::size_t n, std::size_t symbols) {
  std::vector<QMatrix> trans(symbols, QMatrix(n, n));
  for (auto& m : trans) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (rng.uniform(0, 1)) m.set(i, j, small_weight(rng));
      }
    }
  }
  QVector init(n, Orientation::row), final(n, Orientation::column);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.uniform(0, 1)) init.set(i, small_weight(rng));
    if (rng.uniform(0, 1)) final.set(i, small_weight(rng));
  }
  return Wfa(letters(symbols), trans, init, final);
}

Wfa duplicate_blocks(const Wfa& a, const Rational& lambda) {
  const std::size_t n = a.states();
  std::vector<QMatrix> trans;
  for (const auto& m : a.transitions()) {
    QMatrix d(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d.set(i, j, m.at(i, j));
        d.set(n + i, n + j, m.at(i, j));
      }
    }
    trans.push_back(std::move(d));
  }
  QVector init(2 * n, Orientation::row), final(2 * n, Orientation::column);
  for (std::size_t i = 0; i < n; ++i) {
    init.set(i, lambda * a.init().at(i));
    init.set(n + i, (1 - lambda) * a.init().at(i));
    final.set(i, a.final().at(i));
    final.set(n + i, a.final().at(i));
  }
  return Wfa(a.alphabet(), trans, init, final);
}

namespace {

// Weight of the edge into `to` after splitting q into q and the new state n.
Rational split_in(const Rational& w, std::size_t to, std::size_t q, std::size_t n, const Rational& share) {
  if (to == q) return share * w;
  if (to == n) return (1 - share) * w;
  return w;
}

}  // namespace

Wfa split_state(const Wfa& a, std::size_t q, const Rational& share) {
  const std::size_t n = a.states();
  auto src = [&](std::size_t i) { return i == n ? q : i; };
  std::vector<QMatrix> trans;
  for (const auto& m : a.transitions()) {
    QMatrix d(n + 1, n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j <= n; ++j) d.set(i, j, split_in(m.at(src(i), src(j)), j, q, n, share));
    }
    trans.push_back(std::move(d));
  }
  QVector init(n + 1, Orientation::row), final(n + 1, Orientation::column);
  for (std::size_t i = 0; i <= n; ++i) {
    init.set(i, split_in(a.init().at(src(i)), i, q, n, share));
    final.set(i, a.final().at(src(i)));
  }
  return Wfa(a.alphabet(), trans, init, final);
}

namespace {

// Sub-stochastic row: integer weights over targets plus optional slack.
std::vector<Rational> random_row(RandomSource& rng, std::size_t n, bool stochastic) {
  std::vector<std::uint64_t> w(n);
  std::uint64_t total = stochastic ? 0 : rng.uniform(0, 3);
  for (auto& x : w) {
    x = rng.uniform(0, 3);
    total += x;
  }
  if (stochastic && total == 0) {
    w[rng.uniform(0, n - 1)] = 1;
    total = 1;
  }
  std::vector<Rational> row(n);
  if (total == 0) return row;
  for (std::size_t j = 0; j < n; ++j) row[j] = make_rational(static_cast<long>(w[j]), static_cast<long>(total));
  return row;
}

}  // namespace

Pra random_pra(RandomSource& rng, std::size_t n, std::size_t symbols, std::size_t s) {
  std::vector<QMatrix> trans(symbols, QMatrix(n, n));
  std::vector<RewardMatrix> rewards(symbols);
  for (std::size_t a = 0; a < symbols; ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Rational> row = random_row(rng, n, false);
      for (std::size_t j = 0; j < n; ++j) {
        if (row[j] == 0) continue;
        trans[a].set(i, j, row[j]);
        RewardVector r(s);
        for (auto& x : r) x = static_cast<int>(rng.uniform(0, 2)) - 1;
        if (s > 0) rewards[a][{i, j}] = r;
      }
    }
  }
  QVector init = QVector::row(random_row(rng, n, true));
  QVector final(n, Orientation::column);
  for (std::size_t i = 0; i < n; ++i) final.set(i, make_rational(static_cast<long>(rng.uniform(0, 2)), 2));
  return Pra(letters(symbols), s, trans, rewards, init, final);
}

Pra split_pra_state(const Pra& a, std::size_t q) {
  const std::size_t n = a.states();
  const Rational half(1, 2);
  auto src = [&](std::size_t i) { return i == n ? q : i; };
  std::vector<QMatrix> trans;
  std::vector<RewardMatrix> rewards(a.alphabet().size());
  for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
    QMatrix d(n + 1, n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j <= n; ++j) {
        Rational w = split_in(a.trans(s).at(src(i), src(j)), j, q, n, half);
        if (w == 0) continue;
        d.set(i, j, w);
        if (a.reward_types() > 0) rewards[s][{i, j}] = a.reward(s, src(i), src(j));
      }
    }
    trans.push_back(std::move(d));
  }
  QVector init(n + 1, Orientation::row), final(n + 1, Orientation::column);
  for (std::size_t i = 0; i <= n; ++i) {
    init.set(i, split_in(a.init().at(src(i)), i, q, n, half));
    final.set(i, a.final().at(src(i)));
  }
  return Pra(a.alphabet(), a.reward_types(), trans, rewards, init, final);
}

VisiblyAlphabet vpa_letters(std::size_t calls, std::size_t returns, std::size_t internals) {
  std::vector<std::string> c, r, i;
  for (std::size_t k = 0; k < calls; ++k) c.push_back("c" + std::to_string(k));
  for (std::size_t k = 0; k < returns; ++k) r.push_back("r" + std::to_string(k));
  for (std::size_t k = 0; k < internals; ++k) i.push_back("i" + std::to_string(k));
  return VisiblyAlphabet(c, r, i);
}

namespace {

QMatrix random_sparse(RandomSource& rng, std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (rng.uniform(0, 2) == 0) m.set(i, j, small_weight(rng));
    }
  }
  return m;
}

}  // namespace

Wvpa random_wvpa(RandomSource& rng, const VisiblyAlphabet& sig, std::size_t n, std::size_t stack_size) {
  std::vector<std::string> stack;
  for (std::size_t g = 0; g < stack_size; ++g) stack.push_back("g" + std::to_string(g));
  std::vector<std::vector<QMatrix>> call(sig.calls().size()), ret(sig.returns().size());
  for (auto& per : call) {
    for (std::size_t g = 0; g < stack_size; ++g) per.push_back(random_sparse(rng, n));
  }
  for (auto& per : ret) {
    for (std::size_t g = 0; g < stack_size; ++g) per.push_back(random_sparse(rng, n));
  }
  std::vector<QMatrix> internal;
  for (std::size_t i = 0; i < sig.internals().size(); ++i) internal.push_back(random_sparse(rng, n));
  QVector init(n, Orientation::row), final(n, Orientation::column);
  init.set(rng.uniform(0, n - 1), small_weight(rng) + 3);
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.uniform(0, 1)) final.set(i, small_weight(rng));
  }
  return Wvpa(sig, stack, call, ret, internal, init, final);
}

Wvpa with_weight(const Wvpa& a, const TransitionRef& t, const Rational& value) {
  const VisiblyAlphabet& sig = a.alphabet();
  std::vector<std::vector<QMatrix>> call(sig.calls().size()), ret(sig.returns().size());
  for (std::size_t c = 0; c < call.size(); ++c) {
    for (std::size_t g = 0; g < a.stack().size(); ++g) call[c].push_back(a.call(c, g));
  }
  for (std::size_t r = 0; r < ret.size(); ++r) {
    for (std::size_t g = 0; g < a.stack().size(); ++g) ret[r].push_back(a.ret(r, g));
  }
  std::vector<QMatrix> internal;
  for (std::size_t i = 0; i < sig.internals().size(); ++i) internal.push_back(a.internal(i));
  switch (t.kind) {
    case SymbolClass::call: call[t.symbol][t.stack].set(t.from, t.to, value); break;
    case SymbolClass::ret: ret[t.symbol][t.stack].set(t.from, t.to, value); break;
    case SymbolClass::internal: internal[t.symbol].set(t.from, t.to, value); break;
  }
  return Wvpa(sig, a.stack(), call, ret, internal, a.init(), a.final());
}

std::vector<TransitionRef> influential_transitions(const Wvpa& a, std::size_t maxlen) {
  const VisiblyAlphabet& sig = a.alphabet();
  std::vector<Word> words = well_matched_words(sig, maxlen);
  std::vector<Rational> base;
  for (const Word& w : words) base.push_back(*naive_vpa_value(a, w));
  std::vector<TransitionRef> refs;
  const std::size_t n = a.states();
  auto consider = [&](SymbolClass kind, std::size_t sym, std::size_t g, const QMatrix& m) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (m.at(i, j) == 0) continue;
        TransitionRef t{kind, sym, g, i, j};
        Wvpa b = with_weight(a, t, m.at(i, j) + 1);
        for (std::size_t k = 0; k < words.size(); ++k) {
          if (*naive_vpa_value(b, words[k]) != base[k]) {
            refs.push_back(t);
            break;
          }
        }
      }
    }
  };
  for (std::size_t c = 0; c < sig.calls().size(); ++c) {
    for (std::size_t g = 0; g < a.stack().size(); ++g) consider(SymbolClass::call, c, g, a.call(c, g));
  }
  for (std::size_t r = 0; r < sig.returns().size(); ++r) {
    for (std::size_t g = 0; g < a.stack().size(); ++g) consider(SymbolClass::ret, r, g, a.ret(r, g));
  }
  for (std::size_t i = 0; i < sig.internals().size(); ++i) consider(SymbolClass::internal, i, 0, a.internal(i));
  return refs;
}

Circuit random_circuit(RandomSource& rng, std::size_t gates, std::size_t max_depth) {
  Circuit c;
  std::vector<std::size_t> depth;
  c.add_one();
  depth.push_back(0);
  if (rng.uniform(0, 3) == 0) {
    c.add_zero();
    depth.push_back(0);
  }
  for (std::size_t k = 0; k < gates; ++k) {
    std::vector<std::size_t> usable;
    for (std::size_t g = 0; g < c.size(); ++g) {
      if (depth[g] < max_depth) usable.push_back(g);
    }
    std::size_t l = usable[rng.uniform(0, usable.size() - 1)];
    std::size_t r = usable[rng.uniform(0, usable.size() - 1)];
    // Prefer recent gates so circuits grow deep rather than wide.
    if (rng.uniform(0, 1) && depth.back() < max_depth) l = c.size() - 1;
    GateOp op = rng.uniform(0, 1) ? GateOp::add : GateOp::mul;
    c.add_gate(op, l, r);
    depth.push_back(1 + std::max(depth[l], depth[r]));
  }
  return c;
}

}  // namespace qwa_test
