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

#include "qwa/io.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace qwa {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

std::vector<Line> lex(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    std::size_t nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

std::size_t parse_nat(const std::string& tok, std::size_t line) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    throw ParseError(line, "expected a natural number, got '" + tok + "'");
  }
  return v;
}

Rational parse_rat(const std::string& tok, std::size_t line) {
  try {
    return parse_rational(tok);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

// Header lines keyed by their first token; every other line is a body line.
class Document {
 public:
  Document(std::string_view text, std::string_view kind, std::set<std::string> header_keys) {
    std::vector<Line> lines = lex(text);
    if (lines.empty() || lines[0].tokens[0] != "kind") {
      throw ParseError(lines.empty() ? 1 : lines[0].number, "expected a 'kind' header first");
    }
    if (lines[0].tokens.size() != 2 || lines[0].tokens[1] != kind) {
      throw ParseError(lines[0].number, "expected 'kind " + std::string(kind) + "'");
    }
    for (std::size_t i = 1; i < lines.size(); ++i) {
      const std::string& key = lines[i].tokens[0];
      if (header_keys.count(key)) {
        if (!headers_.emplace(key, lines[i]).second) throw ParseError(lines[i].number, "duplicate '" + key + "' line");
      } else {
        body_.push_back(std::move(lines[i]));
      }
    }
  }

  const Line* header(const std::string& key) const {
    auto it = headers_.find(key);
    return it == headers_.end() ? nullptr : &it->second;
  }

  const Line& require(const std::string& key) const {
    const Line* l = header(key);
    if (!l) throw ParseError(0, "missing '" + key + "' line");
    return *l;
  }

  std::vector<std::string> labels(const std::string& key) const {
    const Line* l = header(key);
    if (!l) return {};
    return {l->tokens.begin() + 1, l->tokens.end()};
  }

  std::size_t states() const {
    const Line& l = require("states");
    if (l.tokens.size() != 2) throw ParseError(l.number, "expected 'states <n>'");
    return parse_nat(l.tokens[1], l.number);
  }

  QVector vector(const std::string& key, std::size_t n, Orientation o) const {
    const Line& l = require(key);
    if (l.tokens.size() != n + 1) {
      throw ParseError(l.number, "'" + key + "' needs " + std::to_string(n) + " values, got " +
                                     std::to_string(l.tokens.size() - 1));
    }
    QVector v(n, o);
    for (std::size_t i = 0; i < n; ++i) v.set(i, parse_rat(l.tokens[i + 1], l.number));
    return v;
  }

  const std::vector<Line>& body() const { return body_; }

 private:
  std::map<std::string, Line> headers_;
  std::vector<Line> body_;
};

std::size_t parse_state(const std::string& tok, std::size_t n, std::size_t line) {
  std::size_t s = parse_nat(tok, line);
  if (s >= n) throw ParseError(line, "state " + tok + " out of range (states " + std::to_string(n) + ")");
  return s;
}

std::size_t parse_symbol(const Alphabet& sigma, const std::string& tok, std::size_t line) {
  auto id = sigma.find(tok);
  if (!id) throw ParseError(line, "unknown symbol '" + tok + "'");
  return *id;
}

Alphabet parse_alphabet(const Document& doc) {
  const Line& l = doc.require("alphabet");
  try {
    return Alphabet(doc.labels("alphabet"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(l.number, e.what());
  }
}

// Runs a constructor, re-raising its validation failure as a document-level error.
template <class F>
auto validated(F&& make) {
  try {
    return make();
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, std::string("invalid automaton: ") + e.what());
  }
}

void add_unique(QMatrix& m, std::set<std::tuple<std::size_t, std::size_t, std::size_t>>& seen, std::size_t sym,
                std::size_t from, std::size_t to, const Rational& w, std::size_t line) {
  if (!seen.emplace(sym, from, to).second) throw ParseError(line, "duplicate transition");
  m.set(from, to, w);
}

void render_vector(std::ostringstream& out, const char* key, const QVector& v) {
  out << key;
  for (std::size_t i = 0; i < v.length(); ++i) out << ' ' << to_string(v.at(i));
  out << '\n';
}

void render_labels(std::ostringstream& out, const char* key, const std::vector<std::string>& labels) {
  out << key;
  for (const auto& l : labels) out << ' ' << l;
  out << '\n';
}

}  // namespace

Wfa parse_wfa(std::string_view text) {
  Document doc(text, "wfa", {"alphabet", "states", "init", "final"});
  Alphabet sigma = parse_alphabet(doc);
  const std::size_t n = doc.states();
  QVector init = doc.vector("init", n, Orientation::row);
  QVector final = doc.vector("final", n, Orientation::column);
  std::vector<QMatrix> trans(sigma.size(), QMatrix(n, n));
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  for (const Line& l : doc.body()) {
    if (l.tokens[0] != "trans") throw ParseError(l.number, "unknown keyword '" + l.tokens[0] + "'");
    if (l.tokens.size() != 5) throw ParseError(l.number, "expected 'trans <symbol> <from> <to> <weight>'");
    std::size_t sym = parse_symbol(sigma, l.tokens[1], l.number);
    std::size_t from = parse_state(l.tokens[2], n, l.number);
    std::size_t to = parse_state(l.tokens[3], n, l.number);
    add_unique(trans[sym], seen, sym, from, to, parse_rat(l.tokens[4], l.number), l.number);
  }
  return validated([&] { return Wfa(sigma, std::move(trans), init, final); });
}

Pra parse_pra(std::string_view text) {
  Document doc(text, "pra", {"alphabet", "rewards", "states", "init", "final"});
  Alphabet sigma = parse_alphabet(doc);
  std::size_t s = 0;
  if (const Line* l = doc.header("rewards")) {
    if (l->tokens.size() != 2) throw ParseError(l->number, "expected 'rewards <s>'");
    s = parse_nat(l->tokens[1], l->number);
  }
  const std::size_t n = doc.states();
  QVector init = doc.vector("init", n, Orientation::row);
  QVector final = doc.vector("final", n, Orientation::column);
  std::vector<QMatrix> trans(sigma.size(), QMatrix(n, n));
  std::vector<RewardMatrix> rewards(sigma.size());
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  for (const Line& l : doc.body()) {
    if (l.tokens[0] != "trans") throw ParseError(l.number, "unknown keyword '" + l.tokens[0] + "'");
    if (l.tokens.size() != 5 + s) {
      throw ParseError(l.number,
                       "expected 'trans <symbol> <from> <to> <probability>' and " + std::to_string(s) + " rewards");
    }
    std::size_t sym = parse_symbol(sigma, l.tokens[1], l.number);
    std::size_t from = parse_state(l.tokens[2], n, l.number);
    std::size_t to = parse_state(l.tokens[3], n, l.number);
    add_unique(trans[sym], seen, sym, from, to, parse_rat(l.tokens[4], l.number), l.number);
    RewardVector r(s);
    for (std::size_t j = 0; j < s; ++j) {
      const std::string& tok = l.tokens[5 + j];
      if (tok == "-1") r[j] = -1;
      else if (tok == "0") r[j] = 0;
      else if (tok == "1" || tok == "+1") r[j] = 1;
      else throw ParseError(l.number, "reward must be -1, 0 or 1, got '" + tok + "'");
    }
    if (s > 0) rewards[sym][{from, to}] = r;
  }
  return validated([&] { return Pra(sigma, s, std::move(trans), std::move(rewards), init, final); });
}

Wvpa parse_vpa(std::string_view text) {
  Document doc(text, "vpa", {"calls", "returns", "internals", "stack", "states", "init", "final"});
  std::map<std::string, std::string> declared;
  for (const char* key : {"calls", "returns", "internals"}) {
    const Line* l = doc.header(key);
    if (!l) continue;
    for (std::size_t i = 1; i < l->tokens.size(); ++i) {
      auto [it, fresh] = declared.emplace(l->tokens[i], key);
      if (!fresh) {
        throw ParseError(l->number,
                         "symbol '" + l->tokens[i] + "' declared in both '" + it->second + "' and '" + key + "'");
      }
    }
  }
  VisiblyAlphabet sig;
  try {
    sig = VisiblyAlphabet(doc.labels("calls"), doc.labels("returns"), doc.labels("internals"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
  std::vector<std::string> stack = doc.labels("stack");
  Alphabet gammas = validated([&] { return Alphabet(stack); });
  const std::size_t n = doc.states();
  QVector init = doc.vector("init", n, Orientation::row);
  QVector final = doc.vector("final", n, Orientation::column);
  const std::size_t nc = sig.calls().size();
  std::vector<std::vector<QMatrix>> call(nc, std::vector<QMatrix>(stack.size(), QMatrix(n, n)));
  std::vector<std::vector<QMatrix>> ret(sig.returns().size(), std::vector<QMatrix>(stack.size(), QMatrix(n, n)));
  std::vector<QMatrix> internal(sig.internals().size(), QMatrix(n, n));
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> seen;
  for (const Line& l : doc.body()) {
    const std::string& kw = l.tokens[0];
    if (kw == "call" || kw == "return") {
      if (l.tokens.size() != 6) {
        throw ParseError(l.number, "expected '" + kw + " <symbol> <stack> <from> <to> <weight>'");
      }
      std::size_t id = parse_symbol(sig.symbols(), l.tokens[1], l.number);
      SymbolClass want = kw == "call" ? SymbolClass::call : SymbolClass::ret;
      if (sig.class_of(id) != want) throw ParseError(l.number, "'" + l.tokens[1] + "' is not a " + kw + " symbol");
      std::size_t g = parse_symbol(gammas, l.tokens[2], l.number);
      std::size_t from = parse_state(l.tokens[3], n, l.number);
      std::size_t to = parse_state(l.tokens[4], n, l.number);
      QMatrix& m = want == SymbolClass::call ? call[sig.local_index(id)][g] : ret[sig.local_index(id)][g];
      add_unique(m, seen, id * (stack.size() + 1) + g, from, to, parse_rat(l.tokens[5], l.number), l.number);
    } else if (kw == "internal") {
      if (l.tokens.size() != 5) throw ParseError(l.number, "expected 'internal <symbol> <from> <to> <weight>'");
      std::size_t id = parse_symbol(sig.symbols(), l.tokens[1], l.number);
      if (sig.class_of(id) != SymbolClass::internal) {
        throw ParseError(l.number, "'" + l.tokens[1] + "' is not an internal symbol");
      }
      std::size_t from = parse_state(l.tokens[2], n, l.number);
      std::size_t to = parse_state(l.tokens[3], n, l.number);
      add_unique(internal[sig.local_index(id)], seen, id * (stack.size() + 1) + stack.size(), from, to,
                 parse_rat(l.tokens[4], l.number), l.number);
    } else {
      throw ParseError(l.number, "unknown keyword '" + kw + "'");
    }
  }
  return validated([&] { return Wvpa(sig, stack, std::move(call), std::move(ret), std::move(internal), init, final); });
}

Automaton parse_automaton(std::string_view text) {
  std::vector<Line> lines = lex(text);
  if (lines.empty() || lines[0].tokens[0] != "kind" || lines[0].tokens.size() != 2) {
    throw ParseError(lines.empty() ? 1 : lines[0].number, "expected 'kind wfa|pra|vpa' first");
  }
  const std::string& kind = lines[0].tokens[1];
  if (kind == "wfa") return parse_wfa(text);
  if (kind == "pra") return parse_pra(text);
  if (kind == "vpa") return parse_vpa(text);
  throw ParseError(lines[0].number, "unknown kind '" + kind + "'");
}

Circuit parse_circuit(std::string_view text) {
  struct Def {
    std::size_t line;
    GateOp op;
    std::string lhs, rhs;
    std::size_t var = 0;
  };
  std::map<std::string, Def> defs;
  std::vector<std::string> order;
  std::optional<std::pair<std::string, std::size_t>> output;
  for (const Line& l : lex(text)) {
    const auto& t = l.tokens;
    if (t[0] == "output") {
      if (t.size() != 2) throw ParseError(l.number, "expected 'output <gate>'");
      if (output) throw ParseError(l.number, "duplicate 'output' line");
      output = {t[1], l.number};
      continue;
    }
    if (t.size() < 3 || t[1] != "=") throw ParseError(l.number, "expected '<gate> = <definition>'");
    Def d{l.number, GateOp::zero, {}, {}, 0};
    if (t.size() == 3) {
      if (t[2] == "0") d.op = GateOp::zero;
      else if (t[2] == "1") d.op = GateOp::one;
      else if (t[2].size() > 1 && t[2][0] == 'x') {
        d.op = GateOp::var;
        d.var = parse_nat(t[2].substr(1), l.number);
      } else {
        throw ParseError(l.number, "expected 0, 1 or x<k>, got '" + t[2] + "'");
      }
    } else if (t.size() == 5) {
      if (t[2] == "add") d.op = GateOp::add;
      else if (t[2] == "mul") d.op = GateOp::mul;
      else if (t[2] == "sub") d.op = GateOp::sub;
      else throw ParseError(l.number, "unknown operation '" + t[2] + "'");
      d.lhs = t[3];
      d.rhs = t[4];
    } else {
      throw ParseError(l.number, "malformed gate definition");
    }
    if (!defs.emplace(t[0], d).second) throw ParseError(l.number, "gate '" + t[0] + "' defined twice");
    order.push_back(t[0]);
  }
  if (!output) throw ParseError(0, "missing 'output' line");
  if (!defs.count(output->first)) throw ParseError(output->second, "undefined gate '" + output->first + "'");

  // Depth-first post-order in file order, so a file already in topological
  // order keeps its numbering.
  Circuit c;
  std::map<std::string, std::size_t> index;
  std::set<std::string> active;
  std::function<std::size_t(const std::string&, std::size_t)> visit = [&](const std::string& name,
                                                                          std::size_t from_line) {
    if (auto it = index.find(name); it != index.end()) return it->second;
    auto it = defs.find(name);
    if (it == defs.end()) throw ParseError(from_line, "undefined gate '" + name + "'");
    const Def& d = it->second;
    if (!active.insert(name).second) throw ParseError(d.line, "gate '" + name + "' depends on itself");
    std::size_t g;
    switch (d.op) {
      case GateOp::zero: g = c.add_zero(); break;
      case GateOp::one: g = c.add_one(); break;
      case GateOp::var: g = c.add_var(d.var); break;
      default: {
        std::size_t l = visit(d.lhs, d.line);
        std::size_t r = visit(d.rhs, d.line);
        g = c.add_gate(d.op, l, r);
      }
    }
    active.erase(name);
    index.emplace(name, g);
    return g;
  };
  for (const auto& name : order) visit(name, defs.at(name).line);
  c.set_output(index.at(output->first));
  return c;
}

std::string render(const Wfa& a) {
  std::ostringstream out;
  out << "kind wfa\n";
  render_labels(out, "alphabet", a.alphabet().labels());
  out << "states " << a.states() << '\n';
  render_vector(out, "init", a.init());
  render_vector(out, "final", a.final());
  for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
    for (std::size_t i = 0; i < a.states(); ++i) {
      for (const auto& [j, x] : a.trans(s).row_entries(i)) {
        out << "trans " << a.alphabet().label(s) << ' ' << i << ' ' << j << ' ' << to_string(x) << '\n';
      }
    }
  }
  return out.str();
}

std::string render(const Pra& a) {
  std::ostringstream out;
  out << "kind pra\n";
  render_labels(out, "alphabet", a.alphabet().labels());
  out << "rewards " << a.reward_types() << '\n';
  out << "states " << a.states() << '\n';
  render_vector(out, "init", a.init());
  render_vector(out, "final", a.final());
  for (std::size_t s = 0; s < a.alphabet().size(); ++s) {
    for (std::size_t i = 0; i < a.states(); ++i) {
      for (const auto& [j, x] : a.trans(s).row_entries(i)) {
        out << "trans " << a.alphabet().label(s) << ' ' << i << ' ' << j << ' ' << to_string(x);
        for (int r : a.reward(s, i, j)) out << ' ' << r;
        out << '\n';
      }
    }
  }
  return out.str();
}

std::string render(const Wvpa& a) {
  const VisiblyAlphabet& sig = a.alphabet();
  std::ostringstream out;
  out << "kind vpa\n";
  render_labels(out, "calls", sig.calls());
  render_labels(out, "returns", sig.returns());
  render_labels(out, "internals", sig.internals());
  render_labels(out, "stack", a.stack());
  out << "states " << a.states() << '\n';
  render_vector(out, "init", a.init());
  render_vector(out, "final", a.final());
  auto emit = [&](const char* kw, const std::string& sym, const std::string* gamma, const QMatrix& m) {
    for (std::size_t i = 0; i < a.states(); ++i) {
      for (const auto& [j, x] : m.row_entries(i)) {
        out << kw << ' ' << sym << ' ';
        if (gamma) out << *gamma << ' ';
        out << i << ' ' << j << ' ' << to_string(x) << '\n';
      }
    }
  };
  for (std::size_t c = 0; c < sig.calls().size(); ++c) {
    for (std::size_t g = 0; g < a.stack().size(); ++g) emit("call", sig.calls()[c], &a.stack()[g], a.call(c, g));
  }
  for (std::size_t r = 0; r < sig.returns().size(); ++r) {
    for (std::size_t g = 0; g < a.stack().size(); ++g) emit("return", sig.returns()[r], &a.stack()[g], a.ret(r, g));
  }
  for (std::size_t i = 0; i < sig.internals().size(); ++i) emit("internal", sig.internals()[i], nullptr, a.internal(i));
  return out.str();
}

std::string render(const Circuit& c) {
  std::ostringstream out;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Gate& g = c.gates()[i];
    out << 'g' << i << " = ";
    switch (g.op) {
      case GateOp::zero: out << '0'; break;
      case GateOp::one: out << '1'; break;
      case GateOp::var: out << 'x' << g.var; break;
      case GateOp::add: out << "add g" << g.lhs << " g" << g.rhs; break;
      case GateOp::mul: out << "mul g" << g.lhs << " g" << g.rhs; break;
      case GateOp::sub: out << "sub g" << g.lhs << " g" << g.rhs; break;
    }
    out << '\n';
  }
  out << "output g" << c.output() << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qwa
