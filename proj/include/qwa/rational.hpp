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

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace qwa {

/// Exact rational scalar. gmpxx keeps results of arithmetic in lowest terms
/// with a positive denominator; values built by hand must go through
/// make_rational() or parse_rational().
using Rational = mpq_class;
using BigInt = mpz_class;

/// Thrown when two operands have incompatible shapes.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when (I - M) has no inverse.
class SingularMatrix : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when an exhaustive oracle would exceed its work budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational make_rational(const BigInt& num, const BigInt& den);

/// Parses "p/q" or an integer. Decimal notation is rejected.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

/// Least common multiple of the denominators seen so far; starts at 1.
void lcm_accumulate(BigInt& acc, const Rational& value);

}  // namespace qwa
