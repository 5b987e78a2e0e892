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

#include "qwa/random.hpp"
#include "qwa/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace qwa {

/// Deterministic Miller–Rabin with bases 2..17, exact for n < 3.4·10¹⁴.
bool is_prime_u64(std::uint64_t n);

/// Uniform random prime in [2³¹, 2³²).
std::uint64_t random_prime(RandomSource& rng);

/// Element of Z/pZ for a prime p < 2³².
struct Residue {
  std::uint64_t value = 0;
  std::uint64_t prime = 2;

  friend bool operator==(const Residue&, const Residue&) = default;
};

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
/// Inverse of a nonzero residue.
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p);

/// x mod p, or nullopt when p divides the denominator of x.
std::optional<std::uint64_t> reduce_mod(const Rational& x, std::uint64_t p);
std::uint64_t reduce_mod(const BigInt& x, std::uint64_t p);
Residue to_residue(const Rational& x, std::uint64_t p);

/// Dense square-or-rectangular matrix over Z/pZ, row-major.
class ModMatrix {
 public:
  ModMatrix() = default;
  ModMatrix(std::size_t rows, std::size_t cols, std::uint64_t prime)
      : rows_(rows), cols_(cols), prime_(prime), data_(rows * cols, 0) {}

  static ModMatrix identity(std::size_t n, std::uint64_t prime);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t prime() const { return prime_; }
  std::uint64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<std::uint64_t>& data() const { return data_; }

  ModMatrix& operator+=(const ModMatrix& other);

  friend bool operator==(const ModMatrix&, const ModMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint64_t prime_ = 2;
  std::vector<std::uint64_t> data_;
};

/// Product with rows distributed over OpenMP threads. Zero entries of the
/// left factor are skipped, so sparse operands are cheap.
ModMatrix mod_matmul(const ModMatrix& a, const ModMatrix& b);
/// Single-threaded reference for mod_matmul.
ModMatrix mod_matmul_serial(const ModMatrix& a, const ModMatrix& b);

}  // namespace qwa
