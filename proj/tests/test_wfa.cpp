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

#include "qwa/elimination.hpp"
#include "qwa/io.hpp"

#include <doctest.h>

using namespace qwa;
using qwa_test::naive_value;
using qwa_test::random_wfa;

namespace {

Wfa scalar(const Rational& init, const Rational& m, const Rational& final) {
  return Wfa(Alphabet({"s"}), {QMatrix::from_dense({{m}})}, QVector::row({init}), QVector::column({final}));
}

Wfa shift() {
  QMatrix m = QMatrix::from_dense({{0, 1}, {0, 0}});
  return Wfa(Alphabet({"s"}), {m}, QVector::row({1, 0}), QVector::column({0, 1}));
}

}  // namespace

TEST_CASE("alphabet validation") {
  CHECK_THROWS(Alphabet({"a", "a"}));
  CHECK_THROWS(Alphabet({""}));
  CHECK_THROWS(Alphabet({"a b"}));
  Alphabet ab({"a", "b"});
  CHECK(ab.find("b") == 1u);
  CHECK_FALSE(ab.find("c"));
  CHECK(format_word(ab, {1, 0}) == "b a");
  CHECK(parse_word(ab, " b  a ") == Word{1, 0});
  CHECK_THROWS(parse_word(ab, "c"));
}

TEST_CASE("evaluate") {
  Wfa a = scalar(1, Rational(1, 2), 1);
  CHECK(evaluate(a, {}) == 1);
  CHECK(evaluate(a, {0, 0}) == Rational(1, 4));
  CHECK(evaluate(Wfa::zero(Alphabet({"s"})), {0, 0}) == 0);
  CHECK_THROWS(evaluate(a, {1}));

  RandomSource rng(1);
  for (int t = 0; t < 20; ++t) {
    Wfa b = random_wfa(rng, rng.uniform(1, 4), 2);
    for (const auto& w : qwa_test::words_up_to(2, 3)) CHECK(evaluate(b, w) == naive_value(b, w));
  }
}

TEST_CASE("difference") {
  RandomSource rng(2);
  Wfa b = random_wfa(rng, 3, 2);
  CHECK_FALSE(is_zero_det(difference(b, b)));
  Wfa z = Wfa::zero(b.alphabet());
  for (const auto& w : qwa_test::words_up_to(2, 3)) CHECK(evaluate(difference(b, z), w) == evaluate(b, w));

  for (int t = 0; t < 20; ++t) {
    Wfa x = random_wfa(rng, rng.uniform(1, 3), 2);
    Wfa y = random_wfa(rng, rng.uniform(1, 3), 2);
    Wfa d = difference(x, y);
    CHECK(d.states() == x.states() + y.states());
    for (const auto& w : qwa_test::words_up_to(2, 4)) CHECK(evaluate(d, w) == naive_value(x, w) - naive_value(y, w));
  }
  CHECK_THROWS_AS(difference(b, Wfa::zero(Alphabet({"q"}))), AlphabetMismatch);
}

TEST_CASE("forward and backward bases") {
  Wfa zero_init(Alphabet({"s"}), {QMatrix::identity(2)}, QVector(2, Orientation::row), QVector::column({1, 1}));
  CHECK(forward_basis_det(zero_init).basis.rows() == 0);

  SpanBasis one = forward_basis_det(scalar(1, 1, 1));
  CHECK(one.basis == QMatrix::from_dense({{1}}));
  CHECK(one.words == std::vector<Word>{Word{}});

  SpanBasis f = forward_basis_det(shift());
  CHECK(f.basis == QMatrix::from_dense({{1, 0}, {0, 1}}));
  CHECK(f.words == std::vector<Word>{Word{}, Word{0}});

  // Mirror: η = (0, 1)ᵀ, M η = (1, 0)ᵀ.
  SpanBasis b = backward_basis_det(shift());
  CHECK(b.basis == QMatrix::from_dense({{0, 1}, {1, 0}}));
  CHECK(b.words == std::vector<Word>{Word{}, Word{0}});
  Wfa zero_final(Alphabet({"s"}), {QMatrix::identity(2)}, QVector::row({1, 1}), QVector(2, Orientation::column));
  CHECK(backward_basis_det(zero_final).basis.cols() == 0);

  RandomSource rng(3);
  for (int t = 0; t < 30; ++t) {
    Wfa a = random_wfa(rng, rng.uniform(1, 4), rng.uniform(1, 3));
    SpanBasis s = forward_basis_det(a);
    CHECK(rank(s.basis) == s.basis.rows());
    CHECK(s.basis.rows() <= a.states());
    for (std::size_t i = 0; i < s.words.size(); ++i) {
      QVector v = a.init();
      for (std::size_t sym : s.words[i]) v = v * a.trans(sym);
      CHECK(v == s.basis.row(i));
    }
    // αM(w) for |w| < n stays inside the span.
    RowEchelon e(a.states());
    for (std::size_t i = 0; i < s.basis.rows(); ++i) e.insert(s.basis.row(i));
    for (const auto& w : qwa_test::words_up_to(a.alphabet().size(), a.states() - 1)) {
      QVector v = a.init();
      for (std::size_t sym : w) v = v * a.trans(sym);
      CHECK(e.contains(v));
    }
  }
}

TEST_CASE("is_zero_det") {
  CHECK_FALSE(is_zero_det(Wfa::zero(Alphabet({"s"}))));
  auto w = is_zero_det(scalar(1, 1, 1));
  REQUIRE(w);
  CHECK(w->empty());

  RandomSource rng(4);
  for (int t = 0; t < 50; ++t) {
    Wfa a = random_wfa(rng, rng.uniform(1, 4), rng.uniform(1, 3));
    auto found = is_zero_det(a);
    bool any = false;
    for (const auto& [word, v] : enumerate_oracle(a, a.states() - 1)) any = any || v != 0;
    CHECK(found.has_value() == any);
    if (found) {
      CHECK(found->size() + 1 <= a.states());
      CHECK(naive_value(a, *found) != 0);
    }
  }
}

TEST_CASE("det witnesses are shortest") {
  RandomSource rng(5);
  for (int t = 0; t < 60; ++t) {
    Wfa b = random_wfa(rng, rng.uniform(1, 3), 2);
    Wfa c = random_wfa(rng, rng.uniform(1, 3), 2);
    EquivResult r = equivalent_det(b, c);
    if (r.verdict != Verdict::inequivalent) continue;
    REQUIRE(r.witness);
    for (const auto& w : qwa_test::words_up_to(2, r.witness->word.size())) {
      if (w.size() == r.witness->word.size()) break;
      CHECK(naive_value(b, w) == naive_value(c, w));
    }
  }
}

TEST_CASE("equivalent_det") {
  RandomSource rng(6);
  Wfa b = random_wfa(rng, 3, 2);
  CHECK(equivalent_det(b, b).verdict == Verdict::equivalent);
  CHECK(equivalent_det(b, qwa_test::split_state(b, 1, Rational(1, 3))).verdict == Verdict::equivalent);

  Wfa base = scalar(1, Rational(1, 2), 1);
  Wfa bumped = scalar(1, Rational(3, 2), 1);
  EquivResult r = equivalent_det(base, bumped);
  CHECK(r.verdict == Verdict::inequivalent);
  REQUIRE(r.witness);
  CHECK(r.witness->word == Word{0});
  CHECK(r.witness->left == Rational(1, 2));
  CHECK(r.witness->right == Rational(3, 2));
}

TEST_CASE("enumerate_oracle") {
  Wfa z = Wfa::zero(Alphabet({"s"}));
  for (const auto& [w, v] : enumerate_oracle(z, 2)) CHECK(v == 0);

  auto all = enumerate_oracle(scalar(1, Rational(1, 2), 1), 2);
  REQUIRE(all.size() == 3);
  CHECK(all[0] == std::make_pair(Word{}, Rational(1)));
  CHECK(all[1] == std::make_pair(Word{0}, Rational(1, 2)));
  CHECK(all[2] == std::make_pair(Word{0, 0}, Rational(1, 4)));

  RandomSource rng(1);
  CHECK_THROWS_AS(enumerate_oracle(random_wfa(rng, 2, 3), 30), BudgetExceeded);
}

TEST_CASE("file round trip") {
  RandomSource rng(7);
  for (int t = 0; t < 20; ++t) {
    Wfa a = random_wfa(rng, rng.uniform(0, 3), rng.uniform(1, 3));
    CHECK(parse_wfa(render(a)) == a);
  }
}
