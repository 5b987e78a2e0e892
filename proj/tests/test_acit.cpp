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

#include "qwa/acit.hpp"

#include <doctest.h>

using namespace qwa;

namespace {

Circuit one() {
  Circuit c;
  c.add_one();
  return c;
}

Circuit sum(bool with_zero) {
  Circuit c;
  std::size_t a = c.add_one();
  std::size_t b = with_zero ? c.add_zero() : c.add_one();
  c.add_gate(GateOp::add, a, b);
  return c;
}

// (1+1) squared k times.
Circuit doubling(std::size_t k) {
  Circuit c;
  std::size_t o = c.add_one();
  std::size_t g = c.add_gate(GateOp::add, o, o);
  for (std::size_t i = 0; i < k; ++i) g = c.add_gate(GateOp::mul, g, g);
  return c;
}

// two = 1+1, then two op two.
Circuit four(GateOp op) {
  Circuit c;
  std::size_t o = c.add_one();
  std::size_t t = c.add_gate(GateOp::add, o, o);
  c.add_gate(op, t, t);
  return c;
}

Circuit commuted(const Circuit& c) {
  Circuit d;
  for (const Gate& g : c.gates()) {
    switch (g.op) {
      case GateOp::zero: d.add_zero(); break;
      case GateOp::one: d.add_one(); break;
      case GateOp::var: d.add_var(g.var); break;
      default: d.add_gate(g.op, g.rhs, g.lhs);
    }
  }
  d.set_output(c.output());
  return d;
}

// (c · 1) + 0, one level deeper with the same value.
Circuit wrapped(const Circuit& c) {
  Circuit d = c;
  std::size_t o = d.add_one(), z = d.add_zero();
  std::size_t m = d.add_gate(GateOp::mul, c.output(), o);
  d.add_gate(GateOp::add, m, z);
  return d;
}

Word word_oracle(std::size_t d) {
  Word w{2};
  for (std::size_t k = 0; k < d; ++k) {
    Word next;
    if (k % 2 == 0) {
      next.push_back(2);
      next.insert(next.end(), w.begin(), w.end());
    } else {
      next.push_back(0);
      next.insert(next.end(), w.begin(), w.end());
      next.push_back(1);
      next.insert(next.end(), w.begin(), w.end());
    }
    w = std::move(next);
  }
  return w;
}

}  // namespace

TEST_CASE("exact and modular circuit evaluation") {
  CHECK(circuit_eval_exact(one()) == 1);
  for (std::size_t k = 0; k <= 4; ++k) {
    BigInt expected = 1;
    expected <<= (1u << k);
    CHECK(circuit_eval_exact(doubling(k)) == expected);
    CHECK(doubling(k).depth() == k + 1);
  }
  CHECK_THROWS_AS(circuit_eval_exact(doubling(30)), BudgetExceeded);
  CHECK(circuit_eval_mod(doubling(30), 1000003) == mod_pow(2, mod_pow(2, 30, 1000002), 1000003));

  CircuitBuilder b;
  std::vector<BigInt> values{0, 1, 2, 7, -5, 1000, BigInt("1267650600228229401496703205379")};
  for (const BigInt& v : values) {
    CircuitBuilder cb;
    Circuit c = cb.finish(cb.constant(v));
    CHECK(circuit_eval_exact(c) == v);
    CHECK(c.has_subtraction() == (v < 0));
  }
  std::size_t x = b.constant(6);
  CHECK(b.mul(x, b.one()) == x);
  CHECK(b.add(x, b.zero()) == x);
  CHECK(b.mul(x, b.zero()) == b.zero());
  CHECK(circuit_eval_exact(b.finish(b.sub(x, b.constant(9)))) == -3);

  Circuit v;
  std::size_t x0 = v.add_var(0), x1 = v.add_var(1);
  v.add_gate(GateOp::add, v.add_gate(GateOp::mul, x0, x0), x1);
  CHECK(v.variable_count() == 2);
  CHECK(circuit_eval_mod(v, 101, {3, 5}) == 14);
  CHECK(circuit_eval_mod(v, 7, {3, 5}) == 0);
  CHECK_THROWS(circuit_eval_exact(v));

  RandomSource rng(1);
  for (int t = 0; t < 40; ++t) {
    Circuit c = qwa_test::random_circuit(rng, rng.uniform(1, 12), 5);
    BigInt exact = qwa_test::naive_circuit_value(c);
    CHECK(circuit_eval_exact(c) == exact);
    std::uint64_t p = random_prime(rng);
    CHECK(circuit_eval_mod(c, p) == reduce_mod(exact, p));
  }
}

TEST_CASE("word family and normaliser") {
  std::vector<BigInt> m{1, 2, 4, 8, 64, 128, 16384};
  for (std::size_t d = 0; d < m.size(); ++d) {
    CHECK(acit_word(d) == word_oracle(d));
    CHECK(acit_normaliser(d) == m[d]);
    CHECK(is_well_matched(acit_alphabet(), acit_word(d)));
  }
  CHECK(acit_alphabet().calls() == std::vector<std::string>{"c"});
  CHECK(acit_alphabet().returns() == std::vector<std::string>{"r"});
  CHECK(acit_alphabet().internals() == std::vector<std::string>{"i"});
}

TEST_CASE("circuits as visibly pushdown automata") {
  CHECK(acit_depth(one()) == 0);
  CHECK(acit_depth(sum(false)) == 1);
  CHECK(acit_depth(four(GateOp::mul)) == 2);
  CHECK(acit_depth(four(GateOp::add)) == 3);

  Wvpa v1 = acit_to_vpa(one());
  CHECK(vpa_evaluate(v1, acit_word(0)) == 1);
  CHECK(vpa_evaluate(acit_to_vpa(sum(false)), acit_word(1)) == 1);
  CHECK(vpa_evaluate(acit_to_vpa(sum(true)), acit_word(1)) == Rational(1, 2));

  Circuit s;
  s.add_gate(GateOp::sub, s.add_one(), s.add_one());
  CHECK_THROWS_AS(acit_to_vpa(s), std::invalid_argument);
  Circuit x;
  x.add_var(0);
  CHECK_THROWS_AS(acit_to_vpa(x), std::invalid_argument);
  CHECK_THROWS_AS(acit_to_vpa(four(GateOp::add), 2), std::invalid_argument);

  RandomSource rng(2);
  for (int t = 0; t < 30; ++t) {
    Circuit c = qwa_test::random_circuit(rng, rng.uniform(1, 8), 4);
    BigInt value = circuit_eval_exact(c);
    std::size_t d = acit_depth(c);
    for (std::size_t depth : {d, d + 1, d + 2}) {
      Wvpa v = acit_to_vpa(c, depth);
      Word w = acit_word(depth);
      CHECK(vpa_evaluate(v, w) * acit_normaliser(depth) == value);
      if (depth > 3) continue;
      for (const Word& u : well_matched_words(acit_alphabet(), w.size() + 1)) {
        if (u != w) CHECK(vpa_evaluate(v, u) == 0);
      }
    }
  }
}

TEST_CASE("circuit identity testing") {
  RandomSource rng(3);
  Circuit c = doubling(3);
  AcitResult same = acit_equal(c, c, 5, rng);
  CHECK(same.equal);
  CHECK(same.primes.size() == 5);
  CHECK(acit_equal(four(GateOp::add), four(GateOp::mul), 5, rng).equal);
  AcitResult r = acit_equal(sum(false), one(), 5, rng);
  CHECK_FALSE(r.equal);
  REQUIRE(r.left);
  REQUIRE(r.right);
  CHECK(r.left->value == 2);
  CHECK(r.right->value == 1);

  Circuit sq, dbl;
  std::size_t a = sq.add_var(0);
  sq.add_gate(GateOp::mul, a, a);
  std::size_t b = dbl.add_var(0);
  dbl.add_gate(GateOp::add, b, b);
  AcitResult vars = acit_equal(sq, dbl, 3, rng);
  REQUIRE(vars.substitution.size() == 1);
  CHECK(vars.equal == (vars.substitution[0] == 2 || vars.substitution[0] == 0));
  if (!vars.equal) {
    CHECK(vars.left->value == circuit_eval_mod(sq, vars.left->prime, vars.substitution));
    CHECK(vars.right->value == circuit_eval_mod(dbl, vars.right->prime, vars.substitution));
  }
  CHECK(acit_equal(sq, commuted(sq), 3, rng).equal);

  for (int t = 0; t < 30; ++t) {
    Circuit c1 = qwa_test::random_circuit(rng, rng.uniform(1, 10), 5);
    Circuit c2 = qwa_test::random_circuit(rng, rng.uniform(1, 10), 5);
    AcitResult res = acit_equal(c1, c2, 4, rng);
    BigInt v1 = circuit_eval_exact(c1), v2 = circuit_eval_exact(c2);
    CHECK(res.equal == (v1 == v2));
    if (!res.equal) {
      CHECK(res.left->value == reduce_mod(v1, res.left->prime));
      CHECK(res.right->value == reduce_mod(v2, res.right->prime));
    }
  }
}

TEST_CASE("identity testing agrees with equivalence of the circuit automata") {
  RandomSource rng(4);
  int equal = 0, unequal = 0;
  for (int t = 0; t < 60; ++t) {
    Circuit c1 = qwa_test::random_circuit(rng, rng.uniform(1, 8), 5);
    Circuit c2;
    switch (t % 3) {
      case 0: c2 = commuted(c1); break;
      case 1: c2 = wrapped(c1); break;
      default: c2 = qwa_test::random_circuit(rng, rng.uniform(1, 8), 5);
    }
    std::size_t d = std::max(acit_depth(c1), acit_depth(c2));
    AcitResult direct = acit_equal(c1, c2, 4, rng);
    VpaEquivResult via = vpa_equivalent(acit_to_vpa(c1, d), acit_to_vpa(c2, d), 4, rng);
    CHECK(direct.equal == via.equivalent);
    CHECK(direct.equal == (circuit_eval_exact(c1) == circuit_eval_exact(c2)));
    (direct.equal ? equal : unequal)++;
  }
  CHECK(equal >= 40);
  CHECK(unequal >= 10);
}
