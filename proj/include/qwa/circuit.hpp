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
#include <cstdint>
#include <map>
#include <vector>

namespace qwa {

enum class GateOp { zero, one, var, add, mul, sub };

struct Gate {
  GateOp op = GateOp::zero;
  std::size_t lhs = 0;
  std::size_t rhs = 0;
  /// Variable index for GateOp::var.
  std::size_t var = 0;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Arithmetic circuit stored in topological order: every internal gate reads
/// gates with smaller indices.
class Circuit {
 public:
  std::size_t add_zero() { return push({GateOp::zero, 0, 0, 0}); }
  std::size_t add_one() { return push({GateOp::one, 0, 0, 0}); }
  std::size_t add_var(std::size_t index) { return push({GateOp::var, 0, 0, index}); }
  /// op must be add, mul or sub; both inputs must already exist.
  std::size_t add_gate(GateOp op, std::size_t lhs, std::size_t rhs);

  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  std::size_t output() const { return output_; }
  void set_output(std::size_t g);

  bool has_variables() const;
  bool has_subtraction() const;
  /// 1 + largest variable index, or 0.
  std::size_t variable_count() const;
  /// Length of the longest path from the output down to an input gate.
  std::size_t depth() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::size_t push(Gate g);
  std::vector<Gate> gates_;
  std::size_t output_ = 0;
};

/// Incremental construction with shared integer constants and the trivial
/// simplifications x+0, x·0, x·1.
class CircuitBuilder {
 public:
  CircuitBuilder();

  std::size_t zero() const { return zero_; }
  std::size_t one() const { return one_; }
  /// Gate computing an arbitrary integer, by binary expansion.
  std::size_t constant(const BigInt& value);
  std::size_t add(std::size_t a, std::size_t b);
  std::size_t sub(std::size_t a, std::size_t b);
  std::size_t mul(std::size_t a, std::size_t b);

  Circuit finish(std::size_t output);

 private:
  Circuit c_;
  std::size_t zero_;
  std::size_t one_;
  std::map<BigInt, std::size_t> constants_;
};

/// Exact value of a variable-free circuit. Throws BudgetExceeded if the
/// estimated bit length of any gate exceeds `budget_bits`.
BigInt circuit_eval_exact(const Circuit& c, std::size_t budget_bits = 1000000);

/// Value modulo a prime with variable x_k set to vars[k].
std::uint64_t circuit_eval_mod(const Circuit& c, std::uint64_t prime, const std::vector<std::uint64_t>& vars = {});

}  // namespace qwa
