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

#include "qwa/randomized.hpp"

#include <map>
#include <set>

namespace qwa {

namespace {

Rational one_minus_inverse_power(const BigInt& base, std::size_t exponent) {
  BigInt p = 1;
  for (std::size_t i = 0; i < exponent; ++i) p *= base;
  return 1 - make_rational(1, p);
}

ZeroResult probably_zero(Rational confidence) {
  ZeroResult r;
  r.confidence = std::move(confidence);
  return r;
}

ZeroResult nonzero_with(const Wfa& a, Word w) {
  ZeroResult r;
  r.nonzero = true;
  r.length = w.size();
  r.value = evaluate(a, w);
  if (is_zero(r.value)) throw std::logic_error("witness word evaluates to zero");
  r.witness = std::move(w);
  return r;
}

QMatrix random_combination(const Wfa& a, std::uint64_t hi, RandomSource& rng) {
  const std::size_t n = a.states();
  QMatrix sum(n, n);
  for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
    Rational r = static_cast<unsigned long>(rng.uniform(1, hi));
    sum += r * a.trans(s);
  }
  return sum;
}

// Steps 1..n−1 of the backward evaluation. The language polynomial only has
// words of length ≤ n−1, so a further step adds nothing to the guarantee and
// would produce witnesses longer than the shortest-witness bound.
template <bool Track>
ZeroResult sz_core(const Wfa& a, std::uint64_t k, RandomSource& rng, std::size_t trials) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  const std::size_t n = a.states();
  if (n == 0) return probably_zero(1);
  if (!is_zero(dot(a.init(), a.final()))) return nonzero_with(a, {});
  const std::uint64_t hi = k * n;
  for (std::size_t t = 0; t < trials; ++t) {
    std::vector<QVector> vs{a.final()};
    for (std::size_t i = 1; i < n; ++i) {
      QVector v = random_combination(a, hi, rng) * vs.back();
      bool hit = !is_zero(dot(a.init(), v));
      if constexpr (Track) {
        vs.push_back(std::move(v));
      } else {
        vs.back() = std::move(v);
      }
      if (!hit) continue;
      if constexpr (!Track) {
        ZeroResult r;
        r.nonzero = true;
        r.length = i;
        return r;
      } else {
        Word w;
        QVector u = a.init();
        for (std::size_t j = i; j >= 1; --j) {
          bool chosen = false;
          for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
            QVector us = u * a.trans(s);
            if (is_zero(dot(us, vs[j - 1]))) continue;
            w.push_back(s);
            u = std::move(us);
            chosen = true;
            break;
          }
          if (!chosen) throw std::logic_error("counterexample walk found no continuing symbol");
        }
        return nonzero_with(a, std::move(w));
      }
    }
  }
  return probably_zero(one_minus_inverse_power(BigInt(static_cast<unsigned long>(k)), trials));
}

// N_j = Σ_σ M(σ) x^{w_{j,σ}} applied to a column of polynomials.
std::vector<UPoly> apply_layer(const Wfa& a, const IsolationWeights& wt, std::size_t j, const std::vector<UPoly>& v) {
  const std::size_t n = a.states();
  std::vector<UPoly> out(n);
  for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
    UPoly shift = UPoly::monomial(wt.at(j, s), 1);
    const QMatrix& m = a.trans(s);
    for (std::size_t r = 0; r < n; ++r) {
      UPoly acc;
      for (const auto& [c, x] : m.row_entries(r)) acc += x * v[c];
      if (!acc.is_zero()) out[r] += acc * shift;
    }
  }
  return out;
}

// Row of polynomials times N_j.
std::vector<UPoly> apply_layer_left(const Wfa& a, const IsolationWeights& wt, std::size_t j,
                                    const std::vector<UPoly>& u) {
  const std::size_t n = a.states();
  std::vector<UPoly> out(n);
  for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
    UPoly shift = UPoly::monomial(wt.at(j, s), 1);
    const QMatrix& m = a.trans(s);
    std::vector<UPoly> acc(n);
    for (std::size_t r = 0; r < n; ++r) {
      if (u[r].is_zero()) continue;
      for (const auto& [c, x] : m.row_entries(r)) acc[c] += x * u[r];
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (!acc[c].is_zero()) out[c] += acc[c] * shift;
    }
  }
  return out;
}

std::vector<UPoly> constant_column(const QVector& v) {
  std::vector<UPoly> out(v.length());
  for (const auto& [i, x] : v.entries()) out[i] = UPoly::constant(x);
  return out;
}

UPoly row_dot(const QVector& row, const std::vector<UPoly>& col) {
  UPoly out;
  for (const auto& [i, x] : row.entries()) out += x * col[i];
  return out;
}

UPoly poly_dot(const std::vector<UPoly>& row, const std::vector<UPoly>& col) {
  UPoly out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!row[i].is_zero() && !col[i].is_zero()) out += row[i] * col[i];
  }
  return out;
}

bool lowest_term_changed(const UPoly& before, const UPoly& after) {
  if (after.is_zero()) return true;
  return before.min_degree_term() != after.min_degree_term();
}

Word assemble(const Wfa& a, const IsolationWeights& weights, const UPoly& p,
              const std::vector<std::pair<std::size_t, std::size_t>>& changed) {
  std::map<std::size_t, std::size_t> letter;
  for (const auto& [i, s] : changed) {
    if (!letter.emplace(i, s).second) throw IsolationFailed("two letters claim the same position");
  }
  Word w;
  std::size_t expected = 1;
  for (const auto& [i, s] : letter) {
    if (i != expected++) throw IsolationFailed("changed positions are not a prefix");
    w.push_back(s);
  }
  Rational value = evaluate(a, w);
  if (is_zero(value)) throw IsolationFailed("extracted word has value zero");
  std::uint64_t wt = 0;
  for (std::size_t i = 0; i < w.size(); ++i) wt += weights.at(i + 1, w[i]);
  auto [e, c] = p.min_degree_term();
  if (e != wt || c != value) throw IsolationFailed("extracted word is not the isolated minimum");
  return w;
}

}  // namespace

ZeroResult zero_sz(const Wfa& a, std::uint64_t k, RandomSource& rng, std::size_t trials) {
  return sz_core<false>(a, k, rng, trials);
}

ZeroResult zero_sz_cex(const Wfa& a, std::uint64_t k, RandomSource& rng, std::size_t trials) {
  return sz_core<true>(a, k, rng, trials);
}

IsolationWeights draw_isolation_weights(std::size_t positions, std::size_t symbols, RandomSource& rng) {
  IsolationWeights w;
  w.positions = positions;
  w.symbols = symbols;
  w.values.resize(positions * symbols);
  const std::uint64_t hi = 2 * static_cast<std::uint64_t>(symbols) * positions;
  for (auto& x : w.values) x = rng.uniform(1, hi);
  return w;
}

UPoly isolation_polynomial(const Wfa& a, const IsolationWeights& weights) {
  const std::size_t n = weights.positions;
  std::vector<UPoly> v = constant_column(a.final());
  const std::vector<UPoly> eta = v;
  for (std::size_t j = n; j >= 1; --j) {
    v = apply_layer(a, weights, j, v);
    for (std::size_t r = 0; r < v.size(); ++r) v[r] += eta[r];
  }
  return row_dot(a.init(), v);
}

Word isolation_cex_serial(const Wfa& a, const IsolationWeights& weights, const UPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("isolation_cex needs a nonzero polynomial");
  std::vector<std::pair<std::size_t, std::size_t>> changed;
  for (std::size_t i = 1; i <= weights.positions; ++i) {
    for (std::size_t s = 0; s < weights.symbols; ++s) {
      IsolationWeights bumped = weights;
      ++bumped.at(i, s);
      if (lowest_term_changed(p, isolation_polynomial(a, bumped))) changed.emplace_back(i, s);
    }
  }
  return assemble(a, weights, p, changed);
}

Word isolation_cex(const Wfa& a, const IsolationWeights& weights, const UPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("isolation_cex needs a nonzero polynomial");
  const std::size_t n = weights.positions;
  const std::size_t k = weights.symbols;
  if (n == 0) return assemble(a, weights, p, {});
  // suffix[j] = V_j = η + N_j V_{j+1}, suffix[n+1] = η.
  std::vector<std::vector<UPoly>> suffix(n + 2);
  suffix[n + 1] = constant_column(a.final());
  for (std::size_t j = n; j >= 1; --j) {
    suffix[j] = apply_layer(a, weights, j, suffix[j + 1]);
    for (std::size_t r = 0; r < suffix[j].size(); ++r) suffix[j][r] += suffix[n + 1][r];
  }
  // prefix[m] = α N₁⋯N_m.
  std::vector<std::vector<UPoly>> prefix(n);
  prefix[0] = constant_column(a.init());
  for (std::size_t m = 1; m < n; ++m) prefix[m] = apply_layer_left(a, weights, m, prefix[m - 1]);

  const long tests = static_cast<long>(n * k);
  std::vector<char> hit(static_cast<std::size_t>(tests), 0);
#pragma omp parallel for schedule(dynamic)
  for (long t = 0; t < tests; ++t) {
    const std::size_t i = static_cast<std::size_t>(t) / k + 1;
    const std::size_t s = static_cast<std::size_t>(t) % k;
    const QMatrix& m = a.trans(s);
    std::vector<UPoly> mv(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (const auto& [c, x] : m.row_entries(r)) mv[r] += x * suffix[i + 1][c];
    }
    UPoly delta = poly_dot(prefix[i - 1], mv);
    const std::uint64_t w = weights.at(i, s);
    UPoly after = p + delta * (UPoly::monomial(w + 1, 1) - UPoly::monomial(w, 1));
    hit[static_cast<std::size_t>(t)] = lowest_term_changed(p, after) ? 1 : 0;
  }
  std::vector<std::pair<std::size_t, std::size_t>> changed;
  for (std::size_t t = 0; t < hit.size(); ++t) {
    if (hit[t]) changed.emplace_back(t / k + 1, t % k);
  }
  return assemble(a, weights, p, changed);
}

ZeroResult zero_isolation(const Wfa& a, std::size_t trials, RandomSource& rng, std::size_t extraction_retries) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  const std::size_t n = a.states();
  if (n == 0) return probably_zero(1);
  const std::size_t k = a.alphabet().size();
  for (std::size_t t = 0; t < trials; ++t) {
    IsolationWeights w = draw_isolation_weights(n, k, rng);
    UPoly p = isolation_polynomial(a, w);
    if (p.is_zero()) continue;
    // P is not identically zero, so the automaton is nonzero whatever happens next.
    for (std::size_t attempt = 0; attempt <= extraction_retries; ++attempt) {
      if (attempt > 0) {
        w = draw_isolation_weights(n, k, rng);
        p = isolation_polynomial(a, w);
        if (p.is_zero()) continue;
      }
      try {
        return nonzero_with(a, isolation_cex(a, w, p));
      } catch (const IsolationFailed&) {
      }
    }
    auto fallback = is_zero_det(a);
    if (!fallback) throw std::logic_error("nonzero isolation polynomial for a zero automaton");
    return nonzero_with(a, *fallback);
  }
  return probably_zero(one_minus_inverse_power(2, trials));
}

EquivResult equivalent_randomized(const Wfa& b, const Wfa& c, RandomizedMethod method,
                                  const RandomizedParams& params, RandomSource& rng) {
  Wfa diff = difference(b, c);
  ZeroResult z;
  switch (method) {
    case RandomizedMethod::sz: {
      RandomSource replay = rng;
      z = zero_sz(diff, params.k, rng, params.trials);
      if (z.nonzero && !z.witness) {
        ZeroResult again = zero_sz_cex(diff, params.k, replay, params.trials);
        if (!again.nonzero || again.length != z.length) throw std::logic_error("replay diverged");
        z = std::move(again);
      }
      break;
    }
    case RandomizedMethod::sz_cex:
      z = zero_sz_cex(diff, params.k, rng, params.trials);
      break;
    case RandomizedMethod::isolation:
      z = zero_isolation(diff, params.trials, rng, params.extraction_retries);
      break;
  }
  EquivResult r;
  if (!z.nonzero) {
    r.verdict = Verdict::probably_equivalent;
    r.confidence = z.confidence;
    return r;
  }
  r.verdict = Verdict::inequivalent;
  r.witness = Witness{*z.witness, evaluate(b, *z.witness), evaluate(c, *z.witness)};
  return r;
}

EquivResult equivalent(const Wfa& b, const Wfa& c, EquivMethod method, const RandomizedParams& params,
                       RandomSource& rng) {
  switch (method) {
    case EquivMethod::det: return equivalent_det(b, c);
    case EquivMethod::sz: return equivalent_randomized(b, c, RandomizedMethod::sz, params, rng);
    case EquivMethod::sz_cex: return equivalent_randomized(b, c, RandomizedMethod::sz_cex, params, rng);
    case EquivMethod::isolation: return equivalent_randomized(b, c, RandomizedMethod::isolation, params, rng);
  }
  throw std::invalid_argument("unknown method");
}

}  // namespace qwa
