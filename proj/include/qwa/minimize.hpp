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
#include "qwa/wfa.hpp"

#include <cstdint>
#include <stdexcept>

namespace qwa {

/// Spanning set of the forward space (rows) or backward space (columns).
struct Basis {
  QMatrix matrix;
  /// Row/column 0 is exactly α (forward) or η (backward).
  bool anchored = false;
};

/// Raised when a basis is not closed under the transition matrices.
class InvalidBasis : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// G_ij = Σ_{|w|<n} (αM(w))_i (αM(w))_j, summed as (α⊗α) Σ_{k<n} T^k with T = Σ_σ M(σ)⊗M(σ).
QMatrix gram_forward(const Wfa& a);
/// G_ij = Σ_{|w|<n} (M(w)η)_i (M(w)η)_j.
QMatrix gram_backward(const Wfa& a);

/// True iff both Gram matrices are nonsingular, i.e. the Hankel matrix has rank n.
bool is_minimal(const Wfa& a);

/// Row basis built from n random points ρ(r) of the forward space, r drawn
/// from {1..k·n}^{Σ×n}, after α. The result is the longest independent prefix,
/// so it can fall short of the full space with probability ≤ n/k.
Basis forward_basis_rand(const Wfa& a, std::uint64_t k, RandomSource& rng);
/// Column mirror of forward_basis_rand, anchored at η.
Basis backward_basis_rand(const Wfa& a, std::uint64_t k, RandomSource& rng);

/// Basis of the forward/backward closure found by the deterministic search.
Basis forward_basis_canonical(const Wfa& a);
Basis backward_basis_canonical(const Wfa& a);

/// (e₁, M→, Fη) with F M(σ) = M→(σ) F. Throws InvalidBasis if F is not
/// forward-closed or not anchored at α.
Wfa forward_reduce(const Wfa& a, const Basis& f);
/// (αB, M←, e₁ᵀ) with M(σ) B = B M←(σ).
Wfa backward_reduce(const Wfa& a, const Basis& b);

/// Forward reduction followed by backward reduction using deterministic bases.
Wfa minimize(const Wfa& a);

/// Same with randomly generated bases. A basis that falls short of the
/// deterministic dimension is redrawn; after `retries` failed draws the
/// deterministic basis is used. k = 0 selects 3n.
Wfa minimize(const Wfa& a, std::uint64_t k, RandomSource& rng, std::size_t retries = 5);

}  // namespace qwa
