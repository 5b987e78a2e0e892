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

#include "qwa/rational.hpp"

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <vector>

namespace qwa {

/// Sorted (index, value) pairs with no stored zeros.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

enum class Orientation { row, column };

/// A sparse rational vector that remembers whether it is a row or a column.
class QVector {
 public:
  QVector() = default;
  QVector(std::size_t length, Orientation orientation);

  static QVector row(const std::vector<Rational>& values);
  static QVector column(const std::vector<Rational>& values);
  static QVector unit(std::size_t length, std::size_t index, Orientation orientation);
  /// Entries must be sorted by index with no zeros.
  static QVector from_sparse(std::size_t length, Orientation orientation, SparseRow entries);

  std::size_t length() const { return length_; }
  Orientation orientation() const { return orientation_; }
  const SparseRow& entries() const { return entries_; }
  bool is_zero() const { return entries_.empty(); }

  Rational at(std::size_t index) const;
  void set(std::size_t index, const Rational& value);

  QVector transposed() const;
  std::vector<Rational> to_dense() const;

  QVector& operator+=(const QVector& other);
  QVector& operator-=(const QVector& other);
  QVector& operator*=(const Rational& factor);

  friend bool operator==(const QVector&, const QVector&) = default;

 private:
  friend class QMatrix;
  std::size_t length_ = 0;
  Orientation orientation_ = Orientation::row;
  SparseRow entries_;
};

QVector operator+(QVector lhs, const QVector& rhs);
QVector operator-(QVector lhs, const QVector& rhs);
QVector operator-(QVector v);
QVector operator*(const Rational& factor, QVector v);

/// Row-major sparse rational matrix.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);

  static QMatrix identity(std::size_t n);
  static QMatrix from_dense(const std::vector<std::vector<Rational>>& values);
  /// Stacks row vectors; every vector must have the same length.
  static QMatrix from_rows(const std::vector<QVector>& rows, std::size_t cols);
  static QMatrix from_columns(const std::vector<QVector>& columns, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool is_zero() const;
  std::size_t nonzeros() const;

  Rational at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Rational& value);
  void add_to(std::size_t r, std::size_t c, const Rational& value);

  const SparseRow& row_entries(std::size_t r) const { return data_[r]; }
  /// Replaces row r; entries must be sorted by column with no zeros.
  void set_row(std::size_t r, SparseRow entries);
  QVector row(std::size_t r) const;
  QVector column(std::size_t c) const;

  QMatrix transposed() const;
  std::vector<std::vector<Rational>> to_dense() const;

  QMatrix& operator+=(const QMatrix& other);
  QMatrix& operator-=(const QMatrix& other);
  QMatrix& operator*=(const Rational& factor);

  friend bool operator==(const QMatrix&, const QMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<SparseRow> data_;
};

QMatrix operator+(QMatrix lhs, const QMatrix& rhs);
QMatrix operator-(QMatrix lhs, const QMatrix& rhs);
QMatrix operator*(const Rational& factor, QMatrix m);
QMatrix operator*(const QMatrix& lhs, const QMatrix& rhs);

/// Row vector times matrix.
QVector operator*(const QVector& row, const QMatrix& m);
/// Matrix times column vector.
QVector operator*(const QMatrix& m, const QVector& column);
/// Row vector times column vector.
Rational dot(const QVector& row, const QVector& column);

/// Kronecker product; block (i,j) of the result is a[i,j] * b.
QMatrix kron(const QMatrix& a, const QMatrix& b);
/// Kronecker product of two vectors of the same orientation.
QVector kron(const QVector& a, const QVector& b);
/// Entrywise product; throws DimensionError on shape mismatch.
QMatrix hadamard(const QMatrix& a, const QMatrix& b);
/// Block-diagonal matrix diag(a, b).
QMatrix direct_sum(const QMatrix& a, const QMatrix& b);
/// Concatenation of two vectors with a common orientation.
QVector concat(const QVector& a, const QVector& b);

std::ostream& operator<<(std::ostream& os, const QVector& v);
std::ostream& operator<<(std::ostream& os, const QMatrix& m);

namespace detail {
// a += factor * b over sorted sparse rows.
void axpy(SparseRow& a, const Rational& factor, const SparseRow& b);
Rational sparse_dot(const SparseRow& a, const SparseRow& b);
}  // namespace detail

}  // namespace qwa
