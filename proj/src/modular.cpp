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

#include "qwa/modular.hpp"

#include "qwa/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace qwa {

namespace {

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d, unsigned s) {
  unsigned __int128 x = 1;
  unsigned __int128 base = a % n;
  for (std::uint64_t e = d; e; e >>= 1) {
    if (e & 1) x = x * base % n;
    base = base * base % n;
  }
  if (x == 1 || x == n - 1) return false;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17};
  for (std::uint64_t b : kBases) {
    if (n == b) return true;
    if (n % b == 0) return false;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t b : kBases) {
    if (miller_rabin_witness(n, b, d, s)) return false;
  }
  return true;
}

std::uint64_t random_prime(RandomSource& rng) {
  for (;;) {
    std::uint64_t c = rng.uniform(std::uint64_t{1} << 31, (std::uint64_t{1} << 32) - 1) | 1;
    if (is_prime_u64(c)) return c;
  }
}

std::uint64_t mod_add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  std::uint64_t s = a + b;
  return s >= p ? s - p : s;
}

std::uint64_t mod_sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a >= b ? a - b : a + p - b; }

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  for (; e; e >>= 1) {
    if (e & 1) r = mod_mul(r, a, p);
    a = mod_mul(a, a, p);
  }
  return r;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw std::domain_error("zero has no inverse");
  return mod_pow(a, p - 2, p);
}

std::uint64_t reduce_mod(const BigInt& x, std::uint64_t p) {
  BigInt r = x % BigInt(static_cast<unsigned long>(p));
  if (r < 0) r += static_cast<unsigned long>(p);
  return r.get_ui();
}

std::optional<std::uint64_t> reduce_mod(const Rational& x, std::uint64_t p) {
  std::uint64_t den = reduce_mod(x.get_den(), p);
  if (den == 0) return std::nullopt;
  return mod_mul(reduce_mod(x.get_num(), p), mod_inv(den, p), p);
}

Residue to_residue(const Rational& x, std::uint64_t p) {
  auto v = reduce_mod(x, p);
  if (!v) throw std::domain_error("prime divides a denominator");
  return Residue{*v, p};
}

ModMatrix ModMatrix::identity(std::size_t n, std::uint64_t prime) {
  ModMatrix m(n, n, prime);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ModMatrix& ModMatrix::operator+=(const ModMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_ || prime_ != other.prime_) {
    throw DimensionError("modular matrix sum shape mismatch");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = mod_add(data_[i], other.data_[i], prime_);
  return *this;
}

namespace {

// One output row. Entries are below 2³², so each product is below 2⁶⁴ and
// 2⁶⁴ of them fit in the 128-bit accumulator.
void product_row(const ModMatrix& a, const ModMatrix& b, ModMatrix& out, std::size_t i,
                 std::vector<unsigned __int128>& acc) {
  const std::size_t m = b.cols();
  std::fill(acc.begin(), acc.end(), 0);
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const std::uint64_t x = a(i, k);
    if (x == 0) continue;
    const std::uint64_t* brow = b.data().data() + k * m;
    for (std::size_t j = 0; j < m; ++j) acc[j] += static_cast<unsigned __int128>(x) * brow[j];
  }
  for (std::size_t j = 0; j < m; ++j) out(i, j) = static_cast<std::uint64_t>(acc[j] % a.prime());
}

void check_product(const ModMatrix& a, const ModMatrix& b) {
  if (a.cols() != b.rows() || a.prime() != b.prime()) throw DimensionError("modular product shape mismatch");
}

}  // namespace

ModMatrix mod_matmul(const ModMatrix& a, const ModMatrix& b) {
  check_product(a, b);
  ModMatrix out(a.rows(), b.cols(), a.prime());
  const long rows = static_cast<long>(a.rows());
#pragma omp parallel
  {
    std::vector<unsigned __int128> acc(b.cols());
#pragma omp for schedule(static)
    for (long i = 0; i < rows; ++i) product_row(a, b, out, static_cast<std::size_t>(i), acc);
  }
  return out;
}

ModMatrix mod_matmul_serial(const ModMatrix& a, const ModMatrix& b) {
  check_product(a, b);
  ModMatrix out(a.rows(), b.cols(), a.prime());
  std::vector<unsigned __int128> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) product_row(a, b, out, i, acc);
  return out;
}

}  // namespace qwa
