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

#include "qwa/pra.hpp"

#include "qwa/elimination.hpp"

#include <algorithm>
#include <functional>

namespace qwa {

namespace {

constexpr std::size_t kMaxRedraws = 64;

bool in_unit_interval(const Rational& x) { return sgn(x) >= 0 && x <= 1; }

std::uint64_t path_count(std::size_t n, std::size_t steps, std::size_t budget) {
  std::uint64_t total = n;
  for (std::size_t i = 0; i < steps; ++i) {
    if (n != 0 && total > budget / n) return budget + 1;
    total *= n;
  }
  return total;
}

void require_epsilon_free(const Pra& a, const char* what) {
  if (a.epsilon()) throw PraError(std::string(what) + " requires an automaton without eps transitions");
}

// Calls visit(probability, reward) for every path over w with nonzero probability.
void for_each_path(const Pra& a, const Word& w, std::size_t budget,
                   const std::function<void(const Rational&, const RewardVector&)>& visit) {
  const std::size_t n = a.states();
  if (path_count(n, w.size(), budget) > budget) throw BudgetExceeded("path enumeration exceeds the budget");
  for (std::size_t s : w) {
    if (s >= a.alphabet().size()) throw std::out_of_range("symbol id outside the alphabet");
  }
  RewardVector reward(a.reward_types(), 0);
  std::function<void(std::size_t, std::size_t, const Rational&)> walk = [&](std::size_t pos, std::size_t state,
                                                                             const Rational& prob) {
    if (pos == w.size()) {
      Rational p = prob * a.final().at(state);
      if (!is_zero(p)) visit(p, reward);
      return;
    }
    for (const auto& [next, m] : a.trans(w[pos]).row_entries(state)) {
      RewardVector r = a.reward(w[pos], state, next);
      for (std::size_t k = 0; k < r.size(); ++k) reward[k] += r[k];
      walk(pos + 1, next, prob * m);
      for (std::size_t k = 0; k < r.size(); ++k) reward[k] -= r[k];
    }
  };
  for (const auto& [q, p] : a.init().entries()) walk(0, q, p);
}

QMatrix hadamard_reward(const Pra& a, std::size_t symbol, std::size_t j) {
  const QMatrix& m = a.trans(symbol);
  QMatrix out(m.rows(), m.cols());
  for (const auto& [ij, r] : a.rewards(symbol)) {
    if (r[j] != 0) out.set(ij.first, ij.second, r[j] * m.at(ij.first, ij.second));
  }
  return out;
}

// The 2n-state expectation automaton over the full alphabet (ε included).
Wfa reduce_all_symbols(const Pra& a, std::size_t j) {
  if (j >= a.reward_types()) throw PraError("reward index out of range");
  const QMatrix I2 = QMatrix::identity(2);
  QMatrix C(2, 2);
  C.set(0, 1, 1);
  std::vector<QMatrix> trans;
  for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
    trans.push_back(kron(a.trans(s), I2) + kron(hadamard_reward(a, s, j), C));
  }
  QVector A = QVector::row({1, 0});
  QVector E = QVector::column({0, 1});
  return Wfa(a.alphabet(), std::move(trans), kron(a.init(), A), kron(a.final(), E));
}

// Removes the ε symbol from `full` by folding E = (I − M(ε))^{-1} into α and
// into every visible transition.
Wfa fold_epsilon(const Wfa& full, std::optional<std::size_t> eps, const Alphabet& visible) {
  if (!eps) return full;
  QMatrix E = star(full.trans(*eps));
  std::vector<QMatrix> trans;
  for (std::size_t s = 0; s < full.alphabet().size(); ++s) {
    if (s != *eps) trans.push_back(full.trans(s) * E);
  }
  return Wfa(visible, std::move(trans), full.init() * E, full.final());
}

Rational power(const Rational& base, int e) {
  if (e == 0) return 1;
  if (e == 1) return base;
  if (e == -1) return 1 / base;
  Rational out = 1;
  for (int i = 0; i < std::abs(e); ++i) out *= base;
  return e > 0 ? out : 1 / out;
}

}  // namespace

Pra::Pra(Alphabet alphabet, std::size_t reward_types, std::vector<QMatrix> trans, std::vector<RewardMatrix> rewards,
         QVector init, QVector final)
    : alphabet_(std::move(alphabet)),
      reward_types_(reward_types),
      trans_(std::move(trans)),
      rewards_(std::move(rewards)),
      init_(std::move(init)),
      final_(std::move(final)) {
  const std::size_t n = init_.length();
  if (init_.orientation() != Orientation::row) throw DimensionError("initial vector must be a row");
  if (final_.orientation() != Orientation::column) throw DimensionError("final vector must be a column");
  if (final_.length() != n) throw DimensionError("initial and final vectors differ in length");
  if (trans_.size() != alphabet_.size() || rewards_.size() != alphabet_.size()) {
    throw DimensionError("one transition and one reward matrix per symbol is required");
  }
  Rational mass = 0;
  for (const auto& [i, x] : init_.entries()) {
    if (sgn(x) < 0) throw PraError("initial vector has a negative entry at state " + std::to_string(i));
    mass += x;
  }
  if (n > 0 && mass != 1) throw PraError("initial vector sums to " + to_string(mass) + ", not 1");
  for (const auto& [i, x] : final_.entries()) {
    if (!in_unit_interval(x)) throw PraError("final weight of state " + std::to_string(i) + " is outside [0,1]");
  }
  for (std::size_t s = 0; s < trans_.size(); ++s) {
    const QMatrix& m = trans_[s];
    if (m.rows() != n || m.cols() != n) throw DimensionError("transition matrix is not n x n");
    for (std::size_t i = 0; i < n; ++i) {
      Rational row = 0;
      for (const auto& [j, x] : m.row_entries(i)) {
        if (sgn(x) < 0) throw PraError("negative probability on symbol " + alphabet_.label(s));
        row += x;
      }
      if (row > 1) {
        throw PraError("row " + std::to_string(i) + " of symbol " + alphabet_.label(s) + " sums to " +
                       to_string(row) + " > 1");
      }
    }
    RewardMatrix kept;
    for (auto& [ij, r] : rewards_[s]) {
      if (ij.first >= n || ij.second >= n) throw DimensionError("reward index out of range");
      if (r.size() != reward_types_) throw PraError("reward vector has the wrong number of components");
      for (int k : r) {
        if (k < -1 || k > 1) throw PraError("reward components must be -1, 0 or 1");
      }
      if (is_zero(m.at(ij.first, ij.second))) continue;
      if (std::all_of(r.begin(), r.end(), [](int k) { return k == 0; })) continue;
      kept.emplace(ij, std::move(r));
    }
    rewards_[s] = std::move(kept);
  }
}

RewardVector Pra::reward(std::size_t symbol, std::size_t from, std::size_t to) const {
  const auto& r = rewards_.at(symbol);
  auto it = r.find({from, to});
  return it == r.end() ? RewardVector(reward_types_, 0) : it->second;
}

Alphabet Pra::visible_alphabet() const {
  std::vector<std::string> labels;
  for (const auto& l : alphabet_.labels()) {
    if (l != kEpsilonLabel) labels.push_back(l);
  }
  return Alphabet(std::move(labels));
}

Word Pra::to_full_word(const Word& visible) const {
  auto eps = epsilon();
  Word out;
  for (std::size_t s : visible) out.push_back(eps && s >= *eps ? s + 1 : s);
  return out;
}

std::vector<Rational> expected_reward_oracle(const Pra& a, const Word& w, std::size_t budget) {
  require_epsilon_free(a, "expected_reward_oracle");
  std::vector<Rational> out(a.reward_types(), Rational(0));
  for_each_path(a, w, budget, [&](const Rational& p, const RewardVector& r) {
    for (std::size_t k = 0; k < r.size(); ++k) out[k] += p * r[k];
  });
  return out;
}

Wfa expectation_reduce(const Pra& a, std::size_t reward_index) {
  require_epsilon_free(a, "expectation_reduce");
  return reduce_all_symbols(a, reward_index);
}

Wfa expected_reward_automaton(const Pra& a, std::size_t reward_index) {
  return fold_epsilon(reduce_all_symbols(a, reward_index), a.epsilon(), a.visible_alphabet());
}

EquivResult expectation_equivalent(const Pra& a, const Pra& b, EquivMethod method, const RandomizedParams& params,
                                   RandomSource& rng) {
  require_same_alphabet(a.alphabet(), b.alphabet());
  if (a.reward_types() != b.reward_types()) throw PraError("automata have different numbers of reward types");
  EquivResult combined;
  Rational error = 0;
  for (std::size_t j = 0; j < a.reward_types(); ++j) {
    EquivResult r = equivalent(expected_reward_automaton(a, j), expected_reward_automaton(b, j), method, params, rng);
    if (r.verdict == Verdict::inequivalent) return r;
    if (r.verdict == Verdict::probably_equivalent) {
      combined.verdict = Verdict::probably_equivalent;
      error += 1 - r.confidence;
    }
  }
  combined.confidence = error >= 1 ? Rational(0) : Rational(1 - error);
  return combined;
}

QMatrix MonomialMatrix::substitute(const std::vector<Rational>& point) const {
  QMatrix out(rows, cols);
  for (const auto& [ij, m] : entries) {
    Rational v = m.coefficient;
    for (std::size_t k = 0; k < m.exponents.size(); ++k) v *= power(point.at(k), m.exponents[k]);
    out.set(ij.first, ij.second, v);
  }
  return out;
}

std::vector<MonomialMatrix> laurent_automaton(const Pra& a) {
  std::vector<MonomialMatrix> out;
  const std::size_t n = a.states();
  for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
    MonomialMatrix mm{n, n, {}};
    for (std::size_t i = 0; i < n; ++i) {
      for (const auto& [j, x] : a.trans(s).row_entries(i)) {
        mm.entries.emplace(std::make_pair(i, j), Monomial{x, a.reward(s, i, j)});
      }
    }
    out.push_back(std::move(mm));
  }
  return out;
}

EpsilonCheck epsilon_check(const Pra& a) {
  EpsilonCheck result;
  auto eps = a.epsilon();
  if (!eps) return result;
  const QMatrix& m = a.trans(*eps);
  const std::size_t n = m.rows();
  // Tarjan's algorithm, iterative to keep deep chains off the call stack.
  std::vector<long> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  long counter = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, edge] = frames.back();
      const auto& row = m.row_entries(v);
      if (edge < row.size()) {
        std::size_t w = row[edge++].first;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
      std::size_t finished = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[finished]);
    }
  }
  for (const auto& comp : components) {
    auto inside = [&](std::size_t q) { return std::binary_search(comp.begin(), comp.end(), q); };
    bool cyclic = comp.size() > 1 || !is_zero(m.at(comp[0], comp[0]));
    if (!cyclic) continue;
    bool leaks = false;
    for (std::size_t q : comp) {
      Rational kept = 0;
      for (const auto& [j, x] : m.row_entries(q)) {
        if (inside(j)) kept += x;
      }
      if (kept < 1) {
        leaks = true;
        break;
      }
    }
    if (!leaks) {
      result.ok = false;
      result.states = comp;
      return result;
    }
  }
  return result;
}

Wfa substituted_automaton(const Pra& a, const std::vector<Rational>& point) {
  std::vector<QMatrix> trans;
  for (const auto& mm : laurent_automaton(a)) trans.push_back(mm.substitute(point));
  Wfa full(a.alphabet(), std::move(trans), a.init(), a.final());
  return fold_epsilon(full, a.epsilon(), a.visible_alphabet());
}

EquivResult distribution_equivalent(const Pra& a, const Pra& b, std::size_t trials, RandomSource& rng) {
  require_same_alphabet(a.alphabet(), b.alphabet());
  if (a.reward_types() != b.reward_types()) throw PraError("automata have different numbers of reward types");
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  for (const Pra* p : {&a, &b}) {
    EpsilonCheck check = epsilon_check(*p);
    if (!check.ok) throw PraError("eps transitions have a closed recurrent class");
  }
  const std::uint64_t s = a.reward_types();
  const std::uint64_t n = a.states() + b.states();
  const std::uint64_t d = (s * n + 1) * n;
  const std::uint64_t hi = std::max<std::uint64_t>(2 * d, 1);
  EquivResult result;
  for (std::size_t t = 0; t < trials; ++t) {
    for (std::size_t attempt = 0;; ++attempt) {
      std::vector<std::uint64_t> draw(s);
      std::vector<Rational> point(s);
      for (std::size_t k = 0; k < s; ++k) {
        draw[k] = rng.uniform(1, hi);
        point[k] = static_cast<unsigned long>(draw[k]);
      }
      Wfa wa, wb;
      try {
        wa = substituted_automaton(a, point);
        wb = substituted_automaton(b, point);
      } catch (const SingularMatrix&) {
        // r is a pole of some entry of the silent closure; the identity is
        // between rational functions, so another point is equally good.
        if (attempt + 1 >= kMaxRedraws) throw;
        continue;
      }
      EquivResult r = equivalent_det(wa, wb);
      if (r.verdict == Verdict::inequivalent) {
        r.substitution = std::move(draw);
        return r;
      }
      result.substitution = std::move(draw);
      break;
    }
  }
  result.verdict = Verdict::probably_equivalent;
  BigInt denom = 1;
  for (std::size_t t = 0; t < trials; ++t) denom *= 2;
  result.confidence = 1 - make_rational(1, denom);
  return result;
}

RewardDistribution reward_distribution_oracle(const Pra& a, const Word& w, std::size_t budget) {
  require_epsilon_free(a, "reward_distribution_oracle");
  RewardDistribution out;
  for_each_path(a, w, budget, [&](const Rational& p, const RewardVector& r) { out[r] += p; });
  return out;
}

}  // namespace qwa
