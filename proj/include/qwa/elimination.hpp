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

#pragma once

#include "qwa/matrix.hpp"

#include <optional>
#include <vector>

namespace qwa {

/// Rank over Q by fraction-free (Bareiss) elimination. Rows are first
/// cleared of denominators, which does not change the rank.
std::size_t rank(const QMatrix& a);

/// Determinant of a square matrix, fraction-free.
Rational determinant(const QMatrix& a);

/// (I - m)^{-1}. Throws SingularMatrix when det(I - m) = 0.
QMatrix star(const QMatrix& m);

/// Incrementally maintained echelon form of a set of row vectors.
///
/// Every stored row has a unit pivot and is zero at the pivots of all rows
/// inserted before it, so a single in-order sweep reduces any vector.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t width) : width_(width) {}

  std::size_t width() const { return width_; }
  std::size_t rank() const { return rows_.size(); }

  bool contains(const QVector& v) const;
  /// Adds v when it is independent of the stored rows; returns whether the rank grew.
  bool insert(const QVector& v);

 private:
  struct Row {
    std::size_t pivot;
    SparseRow entries;
  };
  SparseRow reduce(SparseRow v) const;

  std::size_t width_;
  std::vector<Row> rows_;
};

/// Solves c * basis = v for many right-hand sides against one basis.
/// The basis rows may be dependent; dependent rows receive coefficient 0.
class RowSpaceSolver {
 public:
  explicit RowSpaceSolver(const QMatrix& basis);

  std::size_t rank() const { return rows_.size(); }
  std::optional<QVector> solve(const QVector& v) const;

 private:
  struct Row {
    std::size_t pivot;
    SparseRow entries;
    SparseRow combination;  // over basis row indices
  };

  std::size_t basis_rows_;
  std::size_t width_;
  std::vector<Row> rows_;
};

/// Coefficients c with c * basis = v, or nullopt when v is outside the row space.
std::optional<QVector> solve_in_row_space(const QMatrix& basis, const QVector& v);

}  // namespace qwa
