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

#include "qwa/circuit.hpp"

#include "qwa/modular.hpp"

#include <algorithm>
#include <stdexcept>

namespace qwa {

std::size_t Circuit::push(Gate g) {
  gates_.push_back(g);
  output_ = gates_.size() - 1;
  return output_;
}

std::size_t Circuit::add_gate(GateOp op, std::size_t lhs, std::size_t rhs) {
  if (op != GateOp::add && op != GateOp::mul && op != GateOp::sub) {
    throw std::invalid_argument("internal gates are add, mul or sub");
  }
  if (lhs >= gates_.size() || rhs >= gates_.size()) throw std::invalid_argument("gate input does not exist yet");
  return push({op, lhs, rhs, 0});
}

void Circuit::set_output(std::size_t g) {
  if (g >= gates_.size()) throw std::invalid_argument("output gate does not exist");
  output_ = g;
}

bool Circuit::has_variables() const {
  return std::any_of(gates_.begin(), gates_.end(), [](const Gate& g) { return g.op == GateOp::var; });
}

bool Circuit::has_subtraction() const {
  return std::any_of(gates_.begin(), gates_.end(), [](const Gate& g) { return g.op == GateOp::sub; });
}

std::size_t Circuit::variable_count() const {
  std::size_t n = 0;
  for (const auto& g : gates_) {
    if (g.op == GateOp::var) n = std::max(n, g.var + 1);
  }
  return n;
}

std::size_t Circuit::depth() const {
  if (gates_.empty()) return 0;
  std::vector<std::size_t> height(gates_.size(), 0);
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    if (g.op == GateOp::add || g.op == GateOp::mul || g.op == GateOp::sub) {
      height[i] = 1 + std::max(height[g.lhs], height[g.rhs]);
    }
  }
  return height[output_];
}

CircuitBuilder::CircuitBuilder() {
  zero_ = c_.add_zero();
  one_ = c_.add_one();
  constants_.emplace(0, zero_);
  constants_.emplace(1, one_);
}

std::size_t CircuitBuilder::constant(const BigInt& value) {
  auto it = constants_.find(value);
  if (it != constants_.end()) return it->second;
  std::size_t g;
  if (value < 0) {
    g = sub(zero_, constant(-value));
  } else {
    // value = 2·(value >> 1) + (value & 1)
    BigInt half = value / 2;
    std::size_t h = constant(half);
    std::size_t twice = add(h, h);
    g = (value % 2 == 0) ? twice : add(twice, one_);
  }
  constants_.emplace(value, g);
  return g;
}

std::size_t CircuitBuilder::add(std::size_t a, std::size_t b) {
  if (a == zero_) return b;
  if (b == zero_) return a;
  return c_.add_gate(GateOp::add, a, b);
}

std::size_t CircuitBuilder::sub(std::size_t a, std::size_t b) {
  if (b == zero_) return a;
  return c_.add_gate(GateOp::sub, a, b);
}

std::size_t CircuitBuilder::mul(std::size_t a, std::size_t b) {
  if (a == zero_ || b == zero_) return zero_;
  if (a == one_) return b;
  if (b == one_) return a;
  return c_.add_gate(GateOp::mul, a, b);
}

Circuit CircuitBuilder::finish(std::size_t output) {
  c_.set_output(output);
  return c_;
}

BigInt circuit_eval_exact(const Circuit& c, std::size_t budget_bits) {
  if (c.has_variables()) throw std::invalid_argument("exact evaluation needs a variable-free circuit");
  const auto& gates = c.gates();
  std::vector<std::size_t> bits(gates.size(), 1);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    switch (g.op) {
      case GateOp::add:
      case GateOp::sub: bits[i] = std::max(bits[g.lhs], bits[g.rhs]) + 1; break;
      case GateOp::mul: bits[i] = bits[g.lhs] + bits[g.rhs]; break;
      default: break;
    }
    if (bits[i] > budget_bits) throw BudgetExceeded("circuit value would exceed the bit budget");
  }
  std::vector<BigInt> v(gates.size());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    switch (g.op) {
      case GateOp::zero: v[i] = 0; break;
      case GateOp::one: v[i] = 1; break;
      case GateOp::var: break;
      case GateOp::add: v[i] = v[g.lhs] + v[g.rhs]; break;
      case GateOp::sub: v[i] = v[g.lhs] - v[g.rhs]; break;
      case GateOp::mul: v[i] = v[g.lhs] * v[g.rhs]; break;
    }
  }
  return v[c.output()];
}

std::uint64_t circuit_eval_mod(const Circuit& c, std::uint64_t p, const std::vector<std::uint64_t>& vars) {
  const auto& gates = c.gates();
  std::vector<std::uint64_t> v(gates.size(), 0);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    switch (g.op) {
      case GateOp::zero: v[i] = 0; break;
      case GateOp::one: v[i] = 1 % p; break;
      case GateOp::var:
        if (g.var >= vars.size()) throw std::invalid_argument("no value for variable x" + std::to_string(g.var));
        v[i] = vars[g.var] % p;
        break;
      case GateOp::add: v[i] = mod_add(v[g.lhs], v[g.rhs], p); break;
      case GateOp::sub: v[i] = mod_sub(v[g.lhs], v[g.rhs], p); break;
      case GateOp::mul: v[i] = mod_mul(v[g.lhs], v[g.rhs], p); break;
    }
  }
  return v[c.output()];
}

}  // namespace qwa
