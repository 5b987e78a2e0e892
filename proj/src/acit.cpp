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

#include "qwa/acit.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

namespace qwa {

namespace {

void for_each_weight(const Wvpa& a, auto&& f) {
  const VisiblyAlphabet& sig = a.alphabet();
  auto matrix = [&](const QMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (const auto& [j, x] : m.row_entries(i)) f(x);
    }
  };
  for (std::size_t g = 0; g < a.stack().size(); ++g) {
    for (std::size_t c = 0; c < sig.calls().size(); ++c) matrix(a.call(c, g));
    for (std::size_t r = 0; r < sig.returns().size(); ++r) matrix(a.ret(r, g));
  }
  for (std::size_t i = 0; i < sig.internals().size(); ++i) matrix(a.internal(i));
  for (const auto& [i, x] : a.init().entries()) f(x);
  for (const auto& [i, x] : a.final().entries()) f(x);
}

// Σ_a M_c(a, γ) and Σ_b M_r(b, γ) per stack symbol, and S₀ = I + Σ_ι M_int(ι).
struct LevelData {
  std::vector<QMatrix> calls;
  std::vector<QMatrix> rets;
  QMatrix base;
};

LevelData level_data(const Wvpa& a) {
  const std::size_t n = a.states();
  const VisiblyAlphabet& sig = a.alphabet();
  LevelData d;
  for (std::size_t g = 0; g < a.stack().size(); ++g) {
    QMatrix c(n, n), r(n, n);
    for (std::size_t x = 0; x < sig.calls().size(); ++x) c = c + a.call(x, g);
    for (std::size_t x = 0; x < sig.returns().size(); ++x) r = r + a.ret(x, g);
    if (c.is_zero() || r.is_zero()) continue;
    d.calls.push_back(std::move(c));
    d.rets.push_back(std::move(r));
  }
  d.base = QMatrix::identity(n);
  for (std::size_t i = 0; i < sig.internals().size(); ++i) d.base = d.base + a.internal(i);
  return d;
}

std::uint64_t residue_of(const Rational& x, std::uint64_t p) {
  auto r = reduce_mod(x, p);
  if (!r) throw std::invalid_argument("prime divides a weight denominator");
  return *r;
}

using ModEntries = std::vector<std::tuple<std::size_t, std::size_t, std::uint64_t>>;

ModEntries mod_entries(const QMatrix& m, std::uint64_t p) {
  ModEntries out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (const auto& [j, x] : m.row_entries(i)) {
      std::uint64_t v = residue_of(x, p);
      if (v != 0) out.emplace_back(i, j, v);
    }
  }
  return out;
}

// The level recurrence carried out in Z/pZ.
class ModLevels {
 public:
  ModLevels(const Wvpa& a, std::uint64_t p) : p_(p), n_(a.states()), s_(n_, n_, p) {
    LevelData d = level_data(a);
    for (std::size_t g = 0; g < d.calls.size(); ++g) {
      calls_.push_back(mod_entries(d.calls[g], p));
      rets_.push_back(mod_entries(d.rets[g], p));
    }
    for (const auto& [i, j, v] : mod_entries(d.base, p)) s_(i, j) = v;
    alpha_.assign(n_, 0);
    eta_.assign(n_, 0);
    for (const auto& [i, x] : a.init().entries()) alpha_[i] = residue_of(x, p);
    for (const auto& [i, x] : a.final().entries()) eta_[i] = residue_of(x, p);
  }

  void step(bool parallel) {
    ModMatrix next = parallel ? mod_matmul(s_, s_) : mod_matmul_serial(s_, s_);
    for (std::size_t g = 0; g < calls_.size(); ++g) {
      ModMatrix u(n_, n_, p_);
      for (const auto& [i, k, v] : calls_[g]) {
        for (std::size_t l = 0; l < n_; ++l) u(i, l) = mod_add(u(i, l), mod_mul(v, s_(k, l), p_), p_);
      }
      for (const auto& [l, j, w] : rets_[g]) {
        for (std::size_t i = 0; i < n_; ++i) next(i, j) = mod_add(next(i, j), mod_mul(u(i, l), w, p_), p_);
      }
    }
    s_ = std::move(next);
  }

  std::uint64_t value() const {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (alpha_[i] == 0) continue;
      std::uint64_t row = 0;
      for (std::size_t j = 0; j < n_; ++j) row = mod_add(row, mod_mul(s_(i, j), eta_[j], p_), p_);
      acc = mod_add(acc, mod_mul(alpha_[i], row, p_), p_);
    }
    return acc;
  }

 private:
  std::uint64_t p_;
  std::size_t n_;
  ModMatrix s_;
  std::vector<ModEntries> calls_;
  std::vector<ModEntries> rets_;
  std::vector<std::uint64_t> alpha_;
  std::vector<std::uint64_t> eta_;
};

struct PrimeOutcome {
  std::optional<std::size_t> level;
  std::uint64_t residue = 0;
};

PrimeOutcome sum_of_squares_mod(const Wvpa& aa, const Wvpa& bb, const Wvpa& ab, std::size_t levels,
                                std::uint64_t p, bool parallel) {
  ModLevels x(aa, p), y(bb, p), z(ab, p);
  for (std::size_t lvl = 0;; ++lvl) {
    std::uint64_t v = mod_sub(mod_add(x.value(), y.value(), p), mod_mul(2, z.value(), p), p);
    if (v != 0) return {lvl, v};
    if (lvl == levels) return {};
    x.step(parallel);
    y.step(parallel);
    z.step(parallel);
  }
}

VpaEquivResult equivalence(const Wvpa& a, const Wvpa& b, std::size_t trials, RandomSource& rng,
                           std::optional<std::size_t> levels, bool parallel) {
  if (!(a.alphabet() == b.alphabet())) throw AlphabetMismatch("automata are over different alphabets");
  if (trials == 0) throw std::invalid_argument("at least one prime is required");
  Wvpa ta = vpa_trim(a);
  Wvpa tb = vpa_trim(b);
  const std::size_t n = ta.states() + tb.states();
  VpaEquivResult res;
  res.levels = levels.value_or(n * n);
  while (res.primes.size() < trials) {
    std::uint64_t p = random_prime(rng);
    if (std::find(res.primes.begin(), res.primes.end(), p) != res.primes.end()) continue;
    if (prime_divides_denominator(ta, p) || prime_divides_denominator(tb, p)) continue;
    res.primes.push_back(p);
  }
  Wvpa aa = vpa_trim(vpa_product(ta, ta));
  Wvpa bb = vpa_trim(vpa_product(tb, tb));
  Wvpa ab = vpa_trim(vpa_product(ta, tb));
  std::vector<PrimeOutcome> out(trials);
  if (parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t t = 0; t < trials; ++t) {
      out[t] = sum_of_squares_mod(aa, bb, ab, res.levels, res.primes[t], true);
    }
  } else {
    for (std::size_t t = 0; t < trials; ++t) {
      out[t] = sum_of_squares_mod(aa, bb, ab, res.levels, res.primes[t], false);
      if (out[t].level) break;
    }
  }
  for (std::size_t t = 0; t < trials; ++t) {
    if (out[t].level) {
      res.equivalent = false;
      res.witness = Residue{out[t].residue, res.primes[t]};
      res.witness_level = out[t].level;
      break;
    }
  }
  return res;
}

// Levelization into the alternating normal form.
constexpr std::size_t kZeroNode = std::numeric_limits<std::size_t>::max();
constexpr std::size_t kOneGate = std::numeric_limits<std::size_t>::max();

struct LevelNode {
  enum class Kind { one, add, mul } kind;
  std::size_t lhs = kZeroNode;
  std::size_t rhs = kZeroNode;
};

class Levelizer {
 public:
  explicit Levelizer(const Circuit& c) : c_(c), zero_(c.size(), 0), minh_(c.size(), 0) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      const Gate& g = c.gates()[i];
      switch (g.op) {
        case GateOp::var:
        case GateOp::sub: throw std::invalid_argument("circuit must be variable-free over {+, *}");
        case GateOp::zero: zero_[i] = 1; break;
        case GateOp::one: break;
        case GateOp::add: {
          zero_[i] = zero_[g.lhs] && zero_[g.rhs];
          std::size_t m = 1 + std::max(minh_[g.lhs], minh_[g.rhs]);
          minh_[i] = m % 2 == 1 ? m : m + 1;
          break;
        }
        case GateOp::mul: {
          zero_[i] = zero_[g.lhs] || zero_[g.rhs];
          std::size_t m = std::max<std::size_t>(2, 1 + std::max(minh_[g.lhs], minh_[g.rhs]));
          minh_[i] = m % 2 == 0 ? m : m + 1;
          break;
        }
      }
      if (zero_[i]) minh_[i] = 0;
    }
  }

  bool output_is_zero() const { return c_.size() == 0 || zero_[c_.output()]; }
  std::size_t depth() const { return output_is_zero() ? 0 : minh_[c_.output()]; }
  std::size_t build_output(std::size_t h) { return build(c_.output(), h); }
  const std::vector<LevelNode>& nodes() const { return nodes_; }

 private:
  std::size_t node(LevelNode::Kind k, std::size_t l, std::size_t r) {
    nodes_.push_back({k, l, r});
    return nodes_.size() - 1;
  }

  std::size_t build(std::size_t g, std::size_t h) {
    if (g != kOneGate) {
      if (zero_[g]) return kZeroNode;
      if (c_.gates()[g].op == GateOp::one) g = kOneGate;
    }
    auto key = std::make_pair(g, h);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    using K = LevelNode::Kind;
    std::size_t id;
    const bool odd = h % 2 == 1;
    if (g == kOneGate) {
      if (h == 0) {
        id = node(K::one, kZeroNode, kZeroNode);
      } else if (odd) {
        id = node(K::add, build(g, h - 1), kZeroNode);
      } else {
        std::size_t b = build(g, h - 1);
        id = node(K::mul, b, b);
      }
    } else {
      const Gate& gate = c_.gates()[g];
      if (gate.op == GateOp::add) {
        if (odd) {
          std::size_t l = build(gate.lhs, h - 1);
          std::size_t r = build(gate.rhs, h - 1);
          id = node(K::add, l, r);
        } else {
          std::size_t l = build(g, h - 1);
          std::size_t r = build(kOneGate, h - 1);
          id = node(K::mul, l, r);
        }
      } else if (!odd) {
        std::size_t l = build(gate.lhs, h - 1);
        std::size_t r = build(gate.rhs, h - 1);
        id = node(K::mul, l, r);
      } else {
        id = node(K::add, build(g, h - 1), kZeroNode);
      }
    }
    memo_.emplace(key, id);
    return id;
  }

  const Circuit& c_;
  std::vector<char> zero_;
  std::vector<std::size_t> minh_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo_;
  std::vector<LevelNode> nodes_;
};

}  // namespace

bool prime_divides_denominator(const Wvpa& a, std::uint64_t p) {
  bool bad = false;
  for_each_weight(a, [&](const Rational& x) { bad = bad || !reduce_mod(x, p); });
  return bad;
}

LevelSumCircuit level_sum_circuit(const Wvpa& a, std::size_t levels) {
  const std::size_t n = a.states();
  LevelData d = level_data(a);
  BigInt den = 1;
  auto note = [&](const Rational& x) { lcm_accumulate(den, x); };
  for (const auto& m : d.calls) {
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& [j, x] : m.row_entries(i)) note(x);
    }
  }
  for (const auto& m : d.rets) {
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& [j, x] : m.row_entries(i)) note(x);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, x] : d.base.row_entries(i)) note(x);
  }
  for (const auto& [i, x] : a.init().entries()) note(x);
  for (const auto& [i, x] : a.final().entries()) note(x);
  const bool scaled = den != 1;
  const Rational scale(den);

  CircuitBuilder cb;
  auto integer = [&](const Rational& x) {
    Rational y = scaled ? x * scale : x;
    return cb.constant(y.get_num());
  };
  std::map<std::uint64_t, std::size_t> powers;
  auto power = [&](auto&& self, std::uint64_t k) -> std::size_t {
    if (!scaled || k == 0) return cb.one();
    if (auto it = powers.find(k); it != powers.end()) return it->second;
    std::size_t h = self(self, k / 2);
    std::size_t g = cb.mul(h, h);
    if (k % 2 == 1) g = cb.mul(g, cb.constant(den));
    powers.emplace(k, g);
    return g;
  };

  using GateMatrix = std::vector<std::vector<std::size_t>>;
  GateMatrix s(n, std::vector<std::size_t>(n, cb.zero()));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, x] : d.base.row_entries(i)) s[i][j] = integer(x);
  }
  std::uint64_t e = 1;
  constexpr std::uint64_t kMaxExponent = std::uint64_t{1} << 61;
  for (std::size_t lvl = 0; lvl < levels; ++lvl) {
    std::uint64_t next_e = std::max(e + 2, 2 * e);
    if (scaled && next_e > kMaxExponent) throw std::invalid_argument("too many levels for a rational automaton");
    GateMatrix square(n, std::vector<std::size_t>(n, cb.zero()));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        if (s[i][k] == cb.zero()) continue;
        for (std::size_t j = 0; j < n; ++j) square[i][j] = cb.add(square[i][j], cb.mul(s[i][k], s[k][j]));
      }
    }
    GateMatrix nested(n, std::vector<std::size_t>(n, cb.zero()));
    for (std::size_t g = 0; g < d.calls.size(); ++g) {
      GateMatrix u(n, std::vector<std::size_t>(n, cb.zero()));
      for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [k, x] : d.calls[g].row_entries(i)) {
          std::size_t cx = integer(x);
          for (std::size_t l = 0; l < n; ++l) u[i][l] = cb.add(u[i][l], cb.mul(cx, s[k][l]));
        }
      }
      for (std::size_t l = 0; l < n; ++l) {
        for (const auto& [j, x] : d.rets[g].row_entries(l)) {
          std::size_t rx = integer(x);
          for (std::size_t i = 0; i < n; ++i) nested[i][j] = cb.add(nested[i][j], cb.mul(u[i][l], rx));
        }
      }
    }
    std::size_t f_nested = power(power, next_e - e - 2);
    std::size_t f_square = power(power, next_e - 2 * e);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        s[i][j] = cb.add(cb.mul(nested[i][j], f_nested), cb.mul(square[i][j], f_square));
      }
    }
    e = next_e;
  }
  std::size_t out = cb.zero();
  for (const auto& [i, x] : a.init().entries()) {
    std::size_t row = cb.zero();
    for (const auto& [j, y] : a.final().entries()) row = cb.add(row, cb.mul(s[i][j], integer(y)));
    out = cb.add(out, cb.mul(integer(x), row));
  }
  LevelSumCircuit res;
  res.circuit = cb.finish(out);
  if (scaled) {
    res.scale_base = den;
    res.scale_exponent = e + 2;
  }
  return res;
}

std::uint64_t level_sum_mod(const Wvpa& a, std::size_t levels, std::uint64_t p) {
  ModLevels m(a, p);
  for (std::size_t lvl = 0; lvl < levels; ++lvl) m.step(false);
  return m.value();
}

VpaEquivResult vpa_equivalent(const Wvpa& a, const Wvpa& b, std::size_t trials, RandomSource& rng,
                              std::optional<std::size_t> levels) {
  return equivalence(a, b, trials, rng, levels, true);
}

VpaEquivResult vpa_equivalent_serial(const Wvpa& a, const Wvpa& b, std::size_t trials, RandomSource& rng,
                                     std::optional<std::size_t> levels) {
  return equivalence(a, b, trials, rng, levels, false);
}

VisiblyAlphabet acit_alphabet() { return VisiblyAlphabet({"c"}, {"r"}, {"i"}); }

Word acit_word(std::size_t depth) {
  constexpr std::size_t c = 0, r = 1, i = 2;
  Word w{i};
  for (std::size_t k = 0; k < depth; ++k) {
    if (k % 2 == 0) {
      w.insert(w.begin(), i);
    } else {
      Word next{c};
      next.insert(next.end(), w.begin(), w.end());
      next.push_back(r);
      next.insert(next.end(), w.begin(), w.end());
      w = std::move(next);
    }
  }
  return w;
}

BigInt acit_normaliser(std::size_t depth) {
  BigInt m = 1;
  for (std::size_t k = 0; k < depth; ++k) m = (k % 2 == 0) ? BigInt(2 * m) : BigInt(m * m);
  return m;
}

std::size_t acit_depth(const Circuit& c) { return Levelizer(c).depth(); }

Wvpa acit_to_vpa(const Circuit& c, std::optional<std::size_t> depth) {
  Levelizer lz(c);
  const std::size_t d = depth.value_or(lz.depth());
  if (d < lz.depth()) throw std::invalid_argument("target depth is below the circuit depth");
  VisiblyAlphabet sig = acit_alphabet();
  if (lz.output_is_zero()) {
    return Wvpa(sig, {}, {{}}, {{}}, {QMatrix(1, 1)}, QVector::unit(1, 0, Orientation::row),
                QVector(1, Orientation::column));
  }
  const std::size_t out = lz.build_output(d);
  const auto& nodes = lz.nodes();
  using K = LevelNode::Kind;
  std::set<std::size_t> pushed;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].kind == K::mul) pushed.insert(nodes[i].rhs);
  }
  // Every nonzero circuit bottoms out in the constant 1.
  const std::size_t n = nodes.size() + 1;
  const std::size_t one_done = nodes.size();
  std::vector<std::string> stack;
  std::map<std::size_t, std::size_t> gamma;
  for (std::size_t k : pushed) {
    gamma.emplace(k, stack.size());
    stack.push_back("g" + std::to_string(k));
  }
  std::vector<std::vector<QMatrix>> call(1, std::vector<QMatrix>(stack.size(), QMatrix(n, n)));
  std::vector<std::vector<QMatrix>> ret(1, std::vector<QMatrix>(stack.size(), QMatrix(n, n)));
  std::vector<QMatrix> internal(1, QMatrix(n, n));
  const Rational half(1, 2);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const LevelNode& v = nodes[i];
    switch (v.kind) {
      case K::one: internal[0].add_to(i, one_done, 1); break;
      case K::add:
        if (v.lhs != kZeroNode) internal[0].add_to(i, v.lhs, half);
        if (v.rhs != kZeroNode) internal[0].add_to(i, v.rhs, half);
        break;
      case K::mul: call[0][gamma.at(v.rhs)].add_to(i, v.lhs, 1); break;
    }
  }
  for (const auto& [k, g] : gamma) ret[0][g].add_to(one_done, k, 1);
  return Wvpa(sig, stack, call, ret, internal, QVector::unit(n, out, Orientation::row),
              QVector::unit(n, one_done, Orientation::column));
}

AcitResult acit_equal(const Circuit& c1, const Circuit& c2, std::size_t trials, RandomSource& rng) {
  if (trials == 0) throw std::invalid_argument("at least one prime is required");
  AcitResult res;
  const std::size_t vars = std::max(c1.variable_count(), c2.variable_count());
  for (std::size_t k = 0; k < vars; ++k) res.substitution.push_back(rng.next() & 0xffffffffULL);
  while (res.primes.size() < trials) {
    std::uint64_t p = random_prime(rng);
    if (std::find(res.primes.begin(), res.primes.end(), p) == res.primes.end()) res.primes.push_back(p);
  }
  for (std::uint64_t p : res.primes) {
    std::uint64_t x = circuit_eval_mod(c1, p, res.substitution);
    std::uint64_t y = circuit_eval_mod(c2, p, res.substitution);
    if (x != y) {
      res.equal = false;
      res.left = Residue{x, p};
      res.right = Residue{y, p};
      break;
    }
  }
  return res;
}

}  // namespace qwa
