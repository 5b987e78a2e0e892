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

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace qwa {

/// Sparse univariate polynomial over Q. Zero coefficients are never stored.
class UPoly {
 public:
  UPoly() = default;
  static UPoly monomial(std::size_t exponent, const Rational& coefficient);
  static UPoly constant(const Rational& value) { return monomial(0, value); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<std::size_t, Rational>& terms() const { return terms_; }
  Rational coefficient(std::size_t exponent) const;

  /// Lowest-exponent term. Throws std::domain_error on the zero polynomial.
  std::pair<std::size_t, Rational> min_degree_term() const;
  std::size_t min_degree() const { return min_degree_term().first; }
  std::size_t max_degree() const;

  void add_term(std::size_t exponent, const Rational& coefficient);

  UPoly& operator+=(const UPoly& other);
  UPoly& operator-=(const UPoly& other);
  UPoly& operator*=(const Rational& factor);

  friend bool operator==(const UPoly&, const UPoly&) = default;

 private:
  std::map<std::size_t, Rational> terms_;
};

UPoly operator+(UPoly lhs, const UPoly& rhs);
UPoly operator-(UPoly lhs, const UPoly& rhs);
UPoly operator*(const UPoly& lhs, const UPoly& rhs);
UPoly operator*(const Rational& factor, UPoly p);

std::pair<std::size_t, Rational> min_degree_term(const UPoly& p);

/// Matrix of univariate polynomials, stored row by row with zero entries omitted.
class UPolyMatrix {
 public:
  UPolyMatrix() = default;
  UPolyMatrix(std::size_t rows, std::size_t cols);

  static UPolyMatrix identity(std::size_t n);
  /// m * x^exponent.
  static UPolyMatrix from_matrix(const QMatrix& m, std::size_t exponent = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::map<std::size_t, UPoly>& row_entries(std::size_t r) const { return data_[r]; }

  UPoly at(std::size_t r, std::size_t c) const;
  void add_to(std::size_t r, std::size_t c, const UPoly& value);

  UPolyMatrix& operator+=(const UPolyMatrix& other);

  friend bool operator==(const UPolyMatrix&, const UPolyMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::map<std::size_t, UPoly>> data_;
};

UPolyMatrix operator+(UPolyMatrix lhs, const UPolyMatrix& rhs);
UPolyMatrix operator*(const UPolyMatrix& lhs, const UPolyMatrix& rhs);

/// Sum of prefix products I + T₁ + T₁T₂ + … + T₁⋯T_k of square matrices.
UPolyMatrix upoly_matrix_product_sum(const std::vector<UPolyMatrix>& terms);

}  // namespace qwa
