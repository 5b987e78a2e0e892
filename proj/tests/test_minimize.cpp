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
#include "qwa/minimize.hpp"

#include <doctest.h>

using namespace qwa;
using qwa_test::random_wfa;

namespace {

// Σ_{|w|<n} (αM(w))ᵀ(αM(w)) by enumeration.
QMatrix gram_oracle(const Wfa& a) {
  const std::size_t n = a.states();
  qwa_test::Dense g(n, std::vector<Rational>(n));
  if (n == 0) return QMatrix(0, 0);
  for (const auto& w : qwa_test::words_up_to(a.alphabet().size(), n - 1)) {
    QVector v = a.init();
    for (std::size_t s : w) v = v * a.trans(s);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) g[i][j] += v.at(i) * v.at(j);
    }
  }
  return QMatrix::from_dense(g);
}

Wfa transpose(const Wfa& a) {
  std::vector<QMatrix> t;
  for (const auto& m : a.transitions()) t.push_back(m.transposed());
  return Wfa(a.alphabet(), t, a.final().transposed(), a.init().transposed());
}

Wfa scalar(const Rational& m) {
  return Wfa(Alphabet({"s"}), {QMatrix::from_dense({{m}})}, QVector::row({1}), QVector::column({1}));
}

}  // namespace

TEST_CASE("gram matrices") {
  CHECK(gram_forward(scalar(Rational(1, 2))) == QMatrix::from_dense({{1}}));
  Wfa zero_init(Alphabet({"s"}), {QMatrix::identity(2)}, QVector(2, Orientation::row), QVector::column({1, 1}));
  CHECK(gram_forward(zero_init).is_zero());

  RandomSource rng(1);
  for (int t = 0; t < 30; ++t) {
    Wfa a = random_wfa(rng, rng.uniform(1, 3), rng.uniform(1, 2));
    CHECK(gram_forward(a) == gram_oracle(a));
    CHECK(gram_backward(a) == gram_oracle(transpose(a)));
  }
}

TEST_CASE("is_minimal") {
  CHECK(is_minimal(Wfa::zero(Alphabet({"s"}))));
  Wfa one = scalar(Rational(1, 2));
  CHECK(is_minimal(one));
  CHECK_FALSE(is_minimal(qwa_test::duplicate_blocks(one, Rational(1, 3))));
  RandomSource rng(2);
  for (int t = 0; t < 30; ++t) {
    Wfa a = random_wfa(rng, rng.uniform(1, 4), 2);
    CHECK(is_minimal(a) == (qwa_test::hankel_rank(a, a.states()) == a.states()));
  }
}

TEST_CASE("random bases") {
  Wfa zero_init(Alphabet({"s"}), {QMatrix::identity(2)}, QVector(2, Orientation::row), QVector::column({1, 1}));
  RandomSource rng(3);
  CHECK(forward_basis_rand(zero_init, 6, rng).matrix.rows() == 0);
  Basis one = forward_basis_rand(scalar(2), 3, rng);
  CHECK(one.matrix == QMatrix::from_dense({{1}}));
  CHECK(one.anchored);

  int agree = 0, total = 0;
  for (int t = 0; t < 100; ++t) {
    Wfa a = random_wfa(rng, rng.uniform(1, 4), rng.uniform(1, 3));
    std::size_t det = forward_basis_det(a).basis.rows();
    Basis f = forward_basis_rand(a, 3 * a.states(), rng);
    CHECK(f.matrix.rows() <= det);
    CHECK(rank(f.matrix) == f.matrix.rows());
    if (!a.init().is_zero()) CHECK(f.matrix.row(0) == a.init());
    agree += f.matrix.rows() == det;
    ++total;
    Basis b = backward_basis_rand(a, 3 * a.states(), rng);
    CHECK(b.matrix.cols() <= backward_basis_det(a).basis.cols());
  }
  // Each draw misses the full space with probability at most 1/3.
  CHECK(agree * 3 >= total * 2);
}

TEST_CASE("forward and backward reductions preserve values") {
  RandomSource rng(4);
  for (int t = 0; t < 40; ++t) {
    Wfa a = random_wfa(rng, rng.uniform(1, 4), 2);
    Wfa f = forward_reduce(a, forward_basis_canonical(a));
    CHECK(f.states() == forward_basis_det(a).basis.rows());
    Wfa b = backward_reduce(a, backward_basis_canonical(a));
    CHECK(b.states() == backward_basis_det(a).basis.cols());
    for (const auto& w : qwa_test::words_up_to(2, 4)) {
      Rational v = qwa_test::naive_value(a, w);
      CHECK(qwa_test::naive_value(f, w) == v);
      CHECK(qwa_test::naive_value(b, w) == v);
    }
  }
  Wfa z = Wfa::zero(Alphabet({"s"}));
  CHECK(forward_reduce(z, forward_basis_canonical(z)).states() == 0);
}

TEST_CASE("reductions reject bases that are not closed") {
  QMatrix shift = QMatrix::from_dense({{0, 1}, {0, 0}});
  Wfa a(Alphabet({"s"}), {shift}, QVector::row({1, 0}), QVector::column({0, 1}));
  CHECK_THROWS_AS(forward_reduce(a, Basis{QMatrix::from_dense({{1, 0}}), true}), InvalidBasis);
  CHECK_THROWS_AS(forward_reduce(a, Basis{QMatrix::from_dense({{0, 1}, {1, 0}}), true}), InvalidBasis);
  CHECK_THROWS_AS(backward_reduce(a, Basis{QMatrix::from_dense({{0}, {1}}), true}), InvalidBasis);
}

TEST_CASE("minimize") {
  CHECK(minimize(Wfa::zero(Alphabet({"s"}))).states() == 0);
  Wfa z = qwa_test::duplicate_blocks(scalar(0), Rational(1, 2));
  CHECK(minimize(z).states() == 1);  // the constant ε ↦ 1 function
  RandomSource rng(5);
  for (int t = 0; t < 40; ++t) {
    Wfa a = random_wfa(rng, rng.uniform(1, 4), 2);
    Wfa m = minimize(a);
    CHECK(is_minimal(m));
    CHECK(equivalent_det(a, m).verdict == Verdict::equivalent);
    CHECK(m.states() == qwa_test::hankel_rank(a, a.states()));
    CHECK(minimize(m).states() == m.states());
    CHECK((m.states() == a.states()) == is_minimal(a));

    RandomSource r(t);
    Wfa mr = minimize(a, 0, r);
    CHECK(mr.states() == m.states());
    CHECK(equivalent_det(a, mr).verdict == Verdict::equivalent);

    Wfa dup = qwa_test::duplicate_blocks(m, Rational(2, 5));
    Wfa md = minimize(dup);
    CHECK(md.states() == m.states());
    CHECK(equivalent_det(dup, md).verdict == Verdict::equivalent);
  }
}
