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

#include "qwa/minimize.hpp"

#include "qwa/elimination.hpp"

namespace qwa {

namespace {

QMatrix square_transfer(const Wfa& a) {
  const std::size_t n = a.states();
  QMatrix t(n * n, n * n);
  for (const auto& m : a.transitions()) t += kron(m, m);
  return t;
}

QMatrix reshape_square(const QVector& v, std::size_t n) {
  QMatrix g(n, n);
  for (const auto& [idx, x] : v.entries()) g.set(idx / n, idx % n, x);
  return g;
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

// Appends candidates after the anchor while they stay independent.
std::vector<QVector> independent_prefix(const QVector& anchor, const std::vector<QVector>& draws) {
  std::vector<QVector> kept;
  auto as_row = [](const QVector& v) { return v.orientation() == Orientation::row ? v : v.transposed(); };
  RowEchelon echelon(anchor.length());
  if (!echelon.insert(as_row(anchor))) return kept;
  kept.push_back(anchor);
  for (const auto& v : draws) {
    if (!echelon.insert(as_row(v))) break;
    kept.push_back(v);
  }
  return kept;
}

std::uint64_t effective_k(std::uint64_t k, std::size_t n) { return k == 0 ? 3 * static_cast<std::uint64_t>(n) : k; }

}  // namespace

QMatrix gram_forward(const Wfa& a) {
  const std::size_t n = a.states();
  if (n == 0) return QMatrix(0, 0);
  QMatrix t = square_transfer(a);
  QVector x = kron(a.init(), a.init());
  QVector acc = x;
  for (std::size_t k = 1; k < n && !x.is_zero(); ++k) {
    x = x * t;
    acc += x;
  }
  return reshape_square(acc, n);
}

QMatrix gram_backward(const Wfa& a) {
  const std::size_t n = a.states();
  if (n == 0) return QMatrix(0, 0);
  QMatrix t = square_transfer(a);
  QVector x = kron(a.final(), a.final());
  QVector acc = x;
  for (std::size_t k = 1; k < n && !x.is_zero(); ++k) {
    x = t * x;
    acc += x;
  }
  return reshape_square(acc, n);
}

bool is_minimal(const Wfa& a) {
  if (a.states() == 0) return true;
  return !is_zero(determinant(gram_forward(a))) && !is_zero(determinant(gram_backward(a)));
}

Basis forward_basis_rand(const Wfa& a, std::uint64_t k, RandomSource& rng) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  const std::size_t n = a.states();
  const std::uint64_t hi = k * n;
  std::vector<QVector> draws;
  for (std::size_t i = 0; i < n; ++i) {
    QVector acc = a.init();
    QVector s = a.init();
    for (std::size_t j = 0; j < n; ++j) {
      s = s * random_combination(a, hi, rng);
      acc += s;
    }
    draws.push_back(std::move(acc));
  }
  return Basis{QMatrix::from_rows(independent_prefix(a.init(), draws), n), true};
}

Basis backward_basis_rand(const Wfa& a, std::uint64_t k, RandomSource& rng) {
  if (k < 2) throw std::invalid_argument("k must be at least 2");
  const std::size_t n = a.states();
  const std::uint64_t hi = k * n;
  std::vector<QVector> draws;
  for (std::size_t i = 0; i < n; ++i) {
    QVector acc = a.final();
    QVector s = a.final();
    for (std::size_t j = 0; j < n; ++j) {
      s = random_combination(a, hi, rng) * s;
      acc += s;
    }
    draws.push_back(std::move(acc));
  }
  return Basis{QMatrix::from_columns(independent_prefix(a.final(), draws), n), true};
}

Basis forward_basis_canonical(const Wfa& a) { return Basis{forward_basis_det(a).basis, true}; }
Basis backward_basis_canonical(const Wfa& a) { return Basis{backward_basis_det(a).basis, true}; }

Wfa forward_reduce(const Wfa& a, const Basis& f) {
  const QMatrix& F = f.matrix;
  const std::size_t m = F.rows();
  if (F.cols() != a.states()) throw DimensionError("basis width does not match the automaton");
  if (m == 0) {
    if (!a.init().is_zero()) throw InvalidBasis("empty basis for a nonzero initial vector");
    return Wfa::zero(a.alphabet());
  }
  if (!(F.row(0) == a.init())) throw InvalidBasis("forward basis is not anchored at the initial vector");
  RowSpaceSolver solver(F);
  if (solver.rank() != m) throw InvalidBasis("forward basis rows are dependent");
  std::vector<QMatrix> trans;
  for (const auto& M : a.transitions()) {
    QMatrix image = F * M;
    QMatrix reduced(m, m);
    for (std::size_t i = 0; i < m; ++i) {
      auto c = solver.solve(image.row(i));
      if (!c) throw InvalidBasis("forward basis is not closed under a transition matrix");
      reduced.set_row(i, c->entries());
    }
    trans.push_back(std::move(reduced));
  }
  return Wfa(a.alphabet(), std::move(trans), QVector::unit(m, 0, Orientation::row), F * a.final());
}

Wfa backward_reduce(const Wfa& a, const Basis& b) {
  const QMatrix& B = b.matrix;
  const std::size_t m = B.cols();
  if (B.rows() != a.states()) throw DimensionError("basis height does not match the automaton");
  if (m == 0) {
    if (!a.final().is_zero()) throw InvalidBasis("empty basis for a nonzero final vector");
    return Wfa::zero(a.alphabet());
  }
  if (!(B.column(0) == a.final())) throw InvalidBasis("backward basis is not anchored at the final vector");
  QMatrix Bt = B.transposed();
  RowSpaceSolver solver(Bt);
  if (solver.rank() != m) throw InvalidBasis("backward basis columns are dependent");
  std::vector<QMatrix> trans;
  for (const auto& M : a.transitions()) {
    // Row j of (M B)ᵀ = (column j of M←)ᵀ Bᵀ.
    QMatrix image = (M * B).transposed();
    QMatrix reduced_t(m, m);
    for (std::size_t j = 0; j < m; ++j) {
      auto c = solver.solve(image.row(j));
      if (!c) throw InvalidBasis("backward basis is not closed under a transition matrix");
      reduced_t.set_row(j, c->entries());
    }
    trans.push_back(reduced_t.transposed());
  }
  return Wfa(a.alphabet(), std::move(trans), a.init() * B, QVector::unit(m, 0, Orientation::column));
}

Wfa minimize(const Wfa& a) {
  Wfa fwd = forward_reduce(a, forward_basis_canonical(a));
  return backward_reduce(fwd, backward_basis_canonical(fwd));
}

Wfa minimize(const Wfa& a, std::uint64_t k, RandomSource& rng, std::size_t retries) {
  auto pick_forward = [&](const Wfa& x) {
    const std::size_t want = forward_basis_det(x).basis.rows();
    const std::uint64_t kk = effective_k(k, x.states());
    for (std::size_t attempt = 0; attempt < retries && kk >= 2; ++attempt) {
      Basis b = forward_basis_rand(x, kk, rng);
      if (b.matrix.rows() == want) return b;
    }
    return forward_basis_canonical(x);
  };
  auto pick_backward = [&](const Wfa& x) {
    const std::size_t want = backward_basis_det(x).basis.cols();
    const std::uint64_t kk = effective_k(k, x.states());
    for (std::size_t attempt = 0; attempt < retries && kk >= 2; ++attempt) {
      Basis b = backward_basis_rand(x, kk, rng);
      if (b.matrix.cols() == want) return b;
    }
    return backward_basis_canonical(x);
  };
  Wfa fwd = forward_reduce(a, pick_forward(a));
  return backward_reduce(fwd, pick_backward(fwd));
}

}  // namespace qwa
