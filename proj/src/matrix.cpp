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

#include "qwa/matrix.hpp"

#include <algorithm>
#include <ostream>
#include <string>

namespace qwa {

namespace detail {

void axpy(SparseRow& a, const Rational& factor, const SparseRow& b) {
  if (is_zero(factor) || b.empty()) return;
  SparseRow out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(std::move(*ia));
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, factor * ib->second);
      ++ib;
    } else {
      Rational sum = ia->second + factor * ib->second;
      if (!is_zero(sum)) out.emplace_back(ia->first, std::move(sum));
      ++ia;
      ++ib;
    }
  }
  a = std::move(out);
}

Rational sparse_dot(const SparseRow& a, const SparseRow& b) {
  Rational sum = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      sum += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

namespace {

Rational lookup(const SparseRow& row, std::size_t index) {
  auto it = std::lower_bound(row.begin(), row.end(), index,
                             [](const auto& e, std::size_t i) { return e.first < i; });
  if (it != row.end() && it->first == index) return it->second;
  return 0;
}

// Values built with the two-argument mpq_class constructor are not reduced.
Rational canonical(Rational x) {
  x.canonicalize();
  return x;
}

void assign(SparseRow& row, std::size_t index, const Rational& value) {
  auto it = std::lower_bound(row.begin(), row.end(), index,
                             [](const auto& e, std::size_t i) { return e.first < i; });
  bool present = it != row.end() && it->first == index;
  if (is_zero(value)) {
    if (present) row.erase(it);
  } else if (present) {
    it->second = canonical(value);
  } else {
    row.insert(it, {index, canonical(value)});
  }
}

SparseRow scaled(const SparseRow& row, const Rational& factor) {
  SparseRow out;
  if (is_zero(factor)) return out;
  out.reserve(row.size());
  for (const auto& [i, v] : row) out.emplace_back(i, factor * v);
  return out;
}

// Accumulates sum_k coeffs[k] * rows[k] into a dense buffer and compacts.
class DenseAccumulator {
 public:
  explicit DenseAccumulator(std::size_t width) : values_(width), touched_(width, false) {}

  void add(const Rational& factor, const SparseRow& row) {
    for (const auto& [j, v] : row) {
      if (!touched_[j]) {
        touched_[j] = true;
        order_.push_back(j);
      }
      values_[j] += factor * v;
    }
  }

  SparseRow take() {
    std::sort(order_.begin(), order_.end());
    SparseRow out;
    for (std::size_t j : order_) {
      if (!is_zero(values_[j])) out.emplace_back(j, values_[j]);
      values_[j] = 0;
      touched_[j] = false;
    }
    order_.clear();
    return out;
  }

 private:
  std::vector<Rational> values_;
  std::vector<bool> touched_;
  std::vector<std::size_t> order_;
};

}  // namespace
}  // namespace detail

using detail::assign;
using detail::lookup;
using detail::canonical;

// ---------------------------------------------------------------- QVector

QVector::QVector(std::size_t length, Orientation orientation)
    : length_(length), orientation_(orientation) {}

QVector QVector::row(const std::vector<Rational>& values) {
  QVector v(values.size(), Orientation::row);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!qwa::is_zero(values[i])) v.entries_.emplace_back(i, canonical(values[i]));
  }
  return v;
}

QVector QVector::column(const std::vector<Rational>& values) {
  QVector v = row(values);
  v.orientation_ = Orientation::column;
  return v;
}

QVector QVector::unit(std::size_t length, std::size_t index, Orientation orientation) {
  if (index >= length) throw DimensionError("unit vector index out of range");
  QVector v(length, orientation);
  v.entries_.emplace_back(index, 1);
  return v;
}

QVector QVector::from_sparse(std::size_t length, Orientation orientation, SparseRow entries) {
  if (!entries.empty() && entries.back().first >= length) throw DimensionError("vector index out of range");
  QVector v(length, orientation);
  v.entries_ = std::move(entries);
  return v;
}

Rational QVector::at(std::size_t index) const {
  if (index >= length_) throw DimensionError("vector index out of range");
  return lookup(entries_, index);
}

void QVector::set(std::size_t index, const Rational& value) {
  if (index >= length_) throw DimensionError("vector index out of range");
  assign(entries_, index, value);
}

QVector QVector::transposed() const {
  QVector v = *this;
  v.orientation_ = orientation_ == Orientation::row ? Orientation::column : Orientation::row;
  return v;
}

std::vector<Rational> QVector::to_dense() const {
  std::vector<Rational> out(length_);
  for (const auto& [i, v] : entries_) out[i] = v;
  return out;
}

static void check_same_shape(const QVector& a, const QVector& b) {
  if (a.length() != b.length() || a.orientation() != b.orientation()) {
    throw DimensionError("vector shape mismatch");
  }
}

QVector& QVector::operator+=(const QVector& other) {
  check_same_shape(*this, other);
  detail::axpy(entries_, 1, other.entries_);
  return *this;
}

QVector& QVector::operator-=(const QVector& other) {
  check_same_shape(*this, other);
  detail::axpy(entries_, -1, other.entries_);
  return *this;
}

QVector& QVector::operator*=(const Rational& factor) {
  entries_ = detail::scaled(entries_, factor);
  return *this;
}

QVector operator+(QVector lhs, const QVector& rhs) { return lhs += rhs; }
QVector operator-(QVector lhs, const QVector& rhs) { return lhs -= rhs; }
QVector operator-(QVector v) { return v *= -1; }
QVector operator*(const Rational& factor, QVector v) { return v *= factor; }

// ---------------------------------------------------------------- QMatrix

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, 1);
  return m;
}

QMatrix QMatrix::from_dense(const std::vector<std::vector<Rational>>& values) {
  std::size_t cols = values.empty() ? 0 : values.front().size();
  QMatrix m(values.size(), cols);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].size() != cols) throw DimensionError("ragged dense matrix");
    for (std::size_t j = 0; j < cols; ++j) {
      if (!qwa::is_zero(values[i][j])) m.data_[i].emplace_back(j, canonical(values[i][j]));
    }
  }
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVector>& rows, std::size_t cols) {
  QMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].length() != cols) throw DimensionError("row length mismatch");
    m.data_[i] = rows[i].entries();
  }
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& columns, std::size_t rows) {
  return from_rows(columns, rows).transposed();
}

bool QMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const SparseRow& r) { return r.empty(); });
}

std::size_t QMatrix::nonzeros() const {
  std::size_t count = 0;
  for (const auto& r : data_) count += r.size();
  return count;
}

Rational QMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw DimensionError("matrix index out of range");
  return lookup(data_[r], c);
}

void QMatrix::set(std::size_t r, std::size_t c, const Rational& value) {
  if (r >= rows_ || c >= cols_) throw DimensionError("matrix index out of range");
  assign(data_[r], c, value);
}

void QMatrix::add_to(std::size_t r, std::size_t c, const Rational& value) {
  set(r, c, at(r, c) + value);
}

void QMatrix::set_row(std::size_t r, SparseRow entries) {
  if (r >= rows_) throw DimensionError("row index out of range");
  if (!entries.empty() && entries.back().first >= cols_) throw DimensionError("column index out of range");
  data_[r] = std::move(entries);
}

QVector QMatrix::row(std::size_t r) const {
  if (r >= rows_) throw DimensionError("row index out of range");
  QVector v(cols_, Orientation::row);
  v.entries_ = data_[r];
  return v;
}

QVector QMatrix::column(std::size_t c) const {
  if (c >= cols_) throw DimensionError("column index out of range");
  QVector v(rows_, Orientation::column);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational x = lookup(data_[r], c);
    if (!qwa::is_zero(x)) v.entries_.emplace_back(r, std::move(x));
  }
  return v;
}

QMatrix QMatrix::transposed() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : data_[r]) t.data_[c].emplace_back(r, v);
  }
  return t;
}

std::vector<std::vector<Rational>> QMatrix::to_dense() const {
  std::vector<std::vector<Rational>> out(rows_, std::vector<Rational>(cols_));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [c, v] : data_[r]) out[r][c] = v;
  }
  return out;
}

QMatrix& QMatrix::operator+=(const QMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix shape mismatch");
  for (std::size_t r = 0; r < rows_; ++r) detail::axpy(data_[r], 1, other.data_[r]);
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix shape mismatch");
  for (std::size_t r = 0; r < rows_; ++r) detail::axpy(data_[r], -1, other.data_[r]);
  return *this;
}

QMatrix& QMatrix::operator*=(const Rational& factor) {
  for (auto& r : data_) r = detail::scaled(r, factor);
  return *this;
}

QMatrix operator+(QMatrix lhs, const QMatrix& rhs) { return lhs += rhs; }
QMatrix operator-(QMatrix lhs, const QMatrix& rhs) { return lhs -= rhs; }
QMatrix operator*(const Rational& factor, QMatrix m) { return m *= factor; }

QMatrix operator*(const QMatrix& lhs, const QMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw DimensionError("matrix product shape mismatch");
  QMatrix out(lhs.rows(), rhs.cols());
  detail::DenseAccumulator acc(rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (const auto& [k, a] : lhs.row_entries(i)) acc.add(a, rhs.row_entries(k));
    out.set_row(i, acc.take());
  }
  return out;
}

QVector operator*(const QVector& row, const QMatrix& m) {
  if (row.orientation() != Orientation::row || row.length() != m.rows()) {
    throw DimensionError("row-vector times matrix shape mismatch");
  }
  detail::DenseAccumulator acc(m.cols());
  for (const auto& [k, a] : row.entries()) acc.add(a, m.row_entries(k));
  return QVector::from_sparse(m.cols(), Orientation::row, acc.take());
}

QVector operator*(const QMatrix& m, const QVector& column) {
  if (column.orientation() != Orientation::column || column.length() != m.cols()) {
    throw DimensionError("matrix times column-vector shape mismatch");
  }
  QVector out(m.rows(), Orientation::column);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Rational x = detail::sparse_dot(m.row_entries(r), column.entries());
    if (!is_zero(x)) out.set(r, x);
  }
  return out;
}

Rational dot(const QVector& row, const QVector& column) {
  if (row.orientation() != Orientation::row || column.orientation() != Orientation::column ||
      row.length() != column.length()) {
    throw DimensionError("dot product expects a row and a column of equal length");
  }
  return detail::sparse_dot(row.entries(), column.entries());
}

QMatrix kron(const QMatrix& a, const QMatrix& b) {
  QMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (const auto& [j, x] : a.row_entries(i)) {
      for (std::size_t k = 0; k < b.rows(); ++k) {
        for (const auto& [l, y] : b.row_entries(k)) {
          out.set(i * b.rows() + k, j * b.cols() + l, x * y);
        }
      }
    }
  }
  return out;
}

QVector kron(const QVector& a, const QVector& b) {
  if (a.orientation() != b.orientation()) throw DimensionError("kron of vectors needs one orientation");
  QVector out(a.length() * b.length(), a.orientation());
  for (const auto& [i, x] : a.entries()) {
    for (const auto& [j, y] : b.entries()) out.set(i * b.length() + j, x * y);
  }
  return out;
}

QMatrix hadamard(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("hadamard shape mismatch");
  QMatrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto& ra = a.row_entries(i);
    const auto& rb = b.row_entries(i);
    auto ia = ra.begin();
    auto ib = rb.begin();
    while (ia != ra.end() && ib != rb.end()) {
      if (ia->first < ib->first) {
        ++ia;
      } else if (ib->first < ia->first) {
        ++ib;
      } else {
        out.set(i, ia->first, ia->second * ib->second);
        ++ia;
        ++ib;
      }
    }
  }
  return out;
}

QMatrix direct_sum(const QMatrix& a, const QMatrix& b) {
  QMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (const auto& [j, x] : a.row_entries(i)) out.set(i, j, x);
  }
  for (std::size_t i = 0; i < b.rows(); ++i) {
    for (const auto& [j, x] : b.row_entries(i)) out.set(a.rows() + i, a.cols() + j, x);
  }
  return out;
}

QVector concat(const QVector& a, const QVector& b) {
  if (a.orientation() != b.orientation()) throw DimensionError("concat needs one orientation");
  QVector out(a.length() + b.length(), a.orientation());
  for (const auto& [i, x] : a.entries()) out.set(i, x);
  for (const auto& [i, x] : b.entries()) out.set(a.length() + i, x);
  return out;
}

std::ostream& operator<<(std::ostream& os, const QVector& v) {
  os << '(';
  for (std::size_t i = 0; i < v.length(); ++i) {
    if (i) os << ", ";
    os << v.at(i);
  }
  return os << (v.orientation() == Orientation::row ? ")" : ")^T");
}

std::ostream& operator<<(std::ostream& os, const QMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m.at(i, j);
    }
  }
  return os << ']';
}

}  // namespace qwa
