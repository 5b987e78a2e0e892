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

#include "qwa/upoly.hpp"

#include <stdexcept>

namespace qwa {

UPoly UPoly::monomial(std::size_t exponent, const Rational& coefficient) {
  UPoly p;
  p.add_term(exponent, coefficient);
  return p;
}

Rational UPoly::coefficient(std::size_t exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::pair<std::size_t, Rational> UPoly::min_degree_term() const {
  if (terms_.empty()) throw std::domain_error("min_degree_term of the zero polynomial");
  return *terms_.begin();
}

std::size_t UPoly::max_degree() const {
  if (terms_.empty()) throw std::domain_error("max_degree of the zero polynomial");
  return terms_.rbegin()->first;
}

void UPoly::add_term(std::size_t exponent, const Rational& coefficient) {
  if (qwa::is_zero(coefficient)) return;
  auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
  if (inserted) return;
  it->second += coefficient;
  if (qwa::is_zero(it->second)) terms_.erase(it);
}

UPoly& UPoly::operator+=(const UPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

UPoly& UPoly::operator-=(const UPoly& other) {
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

UPoly& UPoly::operator*=(const Rational& factor) {
  if (qwa::is_zero(factor)) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= factor;
  return *this;
}

UPoly operator+(UPoly lhs, const UPoly& rhs) { return lhs += rhs; }
UPoly operator-(UPoly lhs, const UPoly& rhs) { return lhs -= rhs; }
UPoly operator*(const Rational& factor, UPoly p) { return p *= factor; }

UPoly operator*(const UPoly& lhs, const UPoly& rhs) {
  UPoly out;
  for (const auto& [ea, ca] : lhs.terms()) {
    for (const auto& [eb, cb] : rhs.terms()) out.add_term(ea + eb, ca * cb);
  }
  return out;
}

std::pair<std::size_t, Rational> min_degree_term(const UPoly& p) { return p.min_degree_term(); }

// ---------------------------------------------------------------- matrices

UPolyMatrix::UPolyMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows) {}

UPolyMatrix UPolyMatrix::identity(std::size_t n) {
  UPolyMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace(i, UPoly::constant(1));
  return m;
}

UPolyMatrix UPolyMatrix::from_matrix(const QMatrix& m, std::size_t exponent) {
  UPolyMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& [c, v] : m.row_entries(r)) out.data_[r].emplace(c, UPoly::monomial(exponent, v));
  }
  return out;
}

UPoly UPolyMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("UPolyMatrix index out of range");
  auto it = data_[r].find(c);
  return it == data_[r].end() ? UPoly() : it->second;
}

void UPolyMatrix::add_to(std::size_t r, std::size_t c, const UPoly& value) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("UPolyMatrix index out of range");
  if (value.is_zero()) return;
  auto& slot = data_[r][c];
  slot += value;
  if (slot.is_zero()) data_[r].erase(c);
}

UPolyMatrix& UPolyMatrix::operator+=(const UPolyMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("UPolyMatrix sum shape mismatch");
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& [c, p] : other.data_[r]) add_to(r, c, p);
  }
  return *this;
}

UPolyMatrix operator+(UPolyMatrix lhs, const UPolyMatrix& rhs) { return lhs += rhs; }

UPolyMatrix operator*(const UPolyMatrix& lhs, const UPolyMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw DimensionError("UPolyMatrix product shape mismatch");
  UPolyMatrix out(lhs.rows(), rhs.cols());
  for (std::size_t i = 0; i < lhs.rows(); ++i) {
    for (const auto& [k, a] : lhs.row_entries(i)) {
      for (const auto& [j, b] : rhs.row_entries(k)) out.add_to(i, j, a * b);
    }
  }
  return out;
}

UPolyMatrix upoly_matrix_product_sum(const std::vector<UPolyMatrix>& terms) {
  if (terms.empty()) throw DimensionError("product sum needs at least one term to fix the dimension");
  const std::size_t n = terms.front().rows();
  UPolyMatrix prefix = UPolyMatrix::identity(n);
  UPolyMatrix sum = prefix;
  for (const auto& t : terms) {
    if (t.rows() != n || t.cols() != n) throw DimensionError("product sum expects square terms of one size");
    prefix = prefix * t;
    sum += prefix;
  }
  return sum;
}

}  // namespace qwa
