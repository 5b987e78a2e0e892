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

#include "qwa/circuit.hpp"
#include "qwa/pra.hpp"
#include "qwa/vpa.hpp"
#include "qwa/wfa.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace qwa {

/// Malformed input. line() is 1-based, or 0 when the error concerns the
/// whole document (for example a validation failure after parsing).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

using Automaton = std::variant<Wfa, Pra, Wvpa>;

/// Dispatches on the `kind` header.
Automaton parse_automaton(std::string_view text);
Wfa parse_wfa(std::string_view text);
Pra parse_pra(std::string_view text);
Wvpa parse_vpa(std::string_view text);
Circuit parse_circuit(std::string_view text);

std::string render(const Wfa& a);
std::string render(const Pra& a);
std::string render(const Wvpa& a);
std::string render(const Circuit& c);

/// Whole file contents. Throws std::runtime_error if it cannot be read.
std::string read_file(const std::string& path);

}  // namespace qwa
