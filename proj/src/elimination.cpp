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

#include "qwa/elimination.hpp"

#include <algorithm>
#include <utility>

namespace qwa {

namespace {

using IntMatrix = std::vector<std::vector<BigInt>>;

// Scales each row by the lcm of its denominators. Returns the product of the
// scale factors so determinants can be recovered.
IntMatrix clear_denominators(const QMatrix& a, BigInt* scale_product) {
  IntMatrix out(a.rows(), std::vector<BigInt>(a.cols()));
  BigInt product = 1;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    BigInt lcm = 1;
    for (const auto& [j, v] : a.row_entries(i)) lcm_accumulate(lcm, v);
    for (const auto& [j, v] : a.row_entries(i)) {
      out[i][j] = v.get_num() * (lcm / v.get_den());
    }
    product *= lcm;
  }
  if (scale_product) *scale_product = product;
  return out;
}

struct BareissResult {
  std::size_t rank = 0;
  BigInt last_pivot = 1;
  int sign = 1;
};

// Fraction-free elimination in place. After step k every remaining entry is a
// (k+1)-minor of the input, so the division by the previous pivot is exact.
BareissResult bareiss(IntMatrix& m) {
  BareissResult result;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m.front().size() : 0;
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      std::swap(m[p], m[r]);
      result.sign = -result.sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        BigInt t = m[r][c] * m[i][j] - m[i][c] * m[r][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  result.rank = r;
  result.last_pivot = prev;
  return result;
}

}  // namespace

std::size_t rank(const QMatrix& a) {
  IntMatrix m = clear_denominators(a, nullptr);
  return bareiss(m).rank;
}

Rational determinant(const QMatrix& a) {
  if (!a.is_square()) throw DimensionError("determinant of a non-square matrix");
  if (a.rows() == 0) return 1;
  BigInt scale;
  IntMatrix m = clear_denominators(a, &scale);
  BareissResult r = bareiss(m);
  if (r.rank < a.rows()) return 0;
  return make_rational(r.sign * r.last_pivot, scale);
}

QMatrix star(const QMatrix& m) {
  if (!m.is_square()) throw DimensionError("star of a non-square matrix");
  const std::size_t n = m.rows();
  auto left = (QMatrix::identity(n) - m).to_dense();
  auto right = QMatrix::identity(n).to_dense();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(left[p][c])) ++p;
    if (p == n) throw SingularMatrix("I - M is singular");
    std::swap(left[p], left[c]);
    std::swap(right[p], right[c]);
    Rational inv = 1 / left[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      left[c][j] *= inv;
      right[c][j] *= inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || is_zero(left[i][c])) continue;
      Rational f = left[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        left[i][j] -= f * left[c][j];
        right[i][j] -= f * right[c][j];
      }
    }
  }
  return QMatrix::from_dense(right);
}

// ------------------------------------------------------------- RowEchelon

SparseRow RowEchelon::reduce(SparseRow v) const {
  for (const auto& row : rows_) {
    if (v.empty()) break;
    auto it = std::lower_bound(v.begin(), v.end(), row.pivot,
                               [](const auto& e, std::size_t i) { return e.first < i; });
    if (it == v.end() || it->first != row.pivot) continue;
    Rational f = -it->second;
    detail::axpy(v, f, row.entries);
  }
  return v;
}

bool RowEchelon::contains(const QVector& v) const {
  if (v.length() != width_) throw DimensionError("vector width does not match echelon form");
  return reduce(v.entries()).empty();
}

bool RowEchelon::insert(const QVector& v) {
  if (v.length() != width_) throw DimensionError("vector width does not match echelon form");
  SparseRow rest = reduce(v.entries());
  if (rest.empty()) return false;
  std::size_t pivot = rest.front().first;
  Rational inv = 1 / rest.front().second;
  for (auto& [i, x] : rest) x *= inv;
  rows_.push_back({pivot, std::move(rest)});
  return true;
}

// --------------------------------------------------------- RowSpaceSolver

RowSpaceSolver::RowSpaceSolver(const QMatrix& basis)
    : basis_rows_(basis.rows()), width_(basis.cols()) {
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    SparseRow v = basis.row_entries(i);
    SparseRow comb{{i, Rational(1)}};
    for (const auto& row : rows_) {
      auto it = std::lower_bound(v.begin(), v.end(), row.pivot,
                                 [](const auto& e, std::size_t k) { return e.first < k; });
      if (it == v.end() || it->first != row.pivot) continue;
      Rational f = -it->second;
      detail::axpy(v, f, row.entries);
      detail::axpy(comb, f, row.combination);
    }
    if (v.empty()) continue;
    std::size_t pivot = v.front().first;
    Rational inv = 1 / v.front().second;
    for (auto& [k, x] : v) x *= inv;
    for (auto& [k, x] : comb) x *= inv;
    rows_.push_back({pivot, std::move(v), std::move(comb)});
  }
}

std::optional<QVector> RowSpaceSolver::solve(const QVector& v) const {
  if (v.orientation() != Orientation::row || v.length() != width_) {
    throw DimensionError("solve_in_row_space expects a row vector of the basis width");
  }
  SparseRow rest = v.entries();
  SparseRow coeffs;
  for (const auto& row : rows_) {
    if (rest.empty()) break;
    auto it = std::lower_bound(rest.begin(), rest.end(), row.pivot,
                               [](const auto& e, std::size_t k) { return e.first < k; });
    if (it == rest.end() || it->first != row.pivot) continue;
    Rational f = it->second;
    detail::axpy(rest, -f, row.entries);
    detail::axpy(coeffs, f, row.combination);
  }
  if (!rest.empty()) return std::nullopt;
  return QVector::from_sparse(basis_rows_, Orientation::row, std::move(coeffs));
}

std::optional<QVector> solve_in_row_space(const QMatrix& basis, const QVector& v) {
  return RowSpaceSolver(basis).solve(v);
}

}  // namespace qwa
