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

#include "qwa/cli.hpp"

#include "qwa/acit.hpp"
#include "qwa/io.hpp"
#include "qwa/minimize.hpp"
#include "qwa/pra.hpp"
#include "qwa/randomized.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ostream>

namespace qwa {

namespace {

using Report = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string first;
  std::string second;
  std::vector<std::string> word;
  std::string method = "det";
  std::uint64_t seed = 1;
  std::uint64_t k = 0;
  std::size_t trials = 0;
  std::size_t levels = 0;
  std::string mode = "expectation";
  bool json = false;
  bool require_det = false;
  bool timing = false;
  bool via_vpa = false;
};

struct Outcome {
  int code = 0;
  Report report;
};

template <class T>
T load(const std::string& path, const char* kind) {
  Automaton a = parse_automaton(read_file(path));
  if (!std::holds_alternative<T>(a)) throw UsageError(path + " is not a " + kind + " file");
  return std::get<T>(std::move(a));
}

EquivMethod equiv_method(const Options& o) {
  if (o.require_det || o.method == "det") return EquivMethod::det;
  if (o.method == "sz") return EquivMethod::sz;
  if (o.method == "sz-cex") return EquivMethod::sz_cex;
  if (o.method == "isolation") return EquivMethod::isolation;
  throw UsageError("unknown method '" + o.method + "'");
}

const char* method_name(EquivMethod m) {
  switch (m) {
    case EquivMethod::det: return "det";
    case EquivMethod::sz: return "sz";
    case EquivMethod::sz_cex: return "sz-cex";
    case EquivMethod::isolation: return "isolation";
  }
  return "det";
}

RandomizedParams params_of(const Options& o, const CLI::App& sub) {
  RandomizedParams p;
  if (sub.count("--k")) p.k = o.k;
  if (sub.count("--trials")) p.trials = o.trials;
  return p;
}

void no_deterministic(const Options& o, const char* what) {
  if (o.require_det) throw UsageError(std::string("no deterministic method for ") + what);
}

void put_witness(Report& r, const Alphabet& sigma, const Witness& w) {
  r["witness"] = format_word(sigma, w.word);
  r["left"] = to_string(w.left);
  r["right"] = to_string(w.right);
}

Outcome equiv_outcome(Report r, const EquivResult& res, const Alphabet& sigma) {
  r["verdict"] = to_string(res.verdict);
  if (res.verdict == Verdict::probably_equivalent) r["confidence"] = to_string(res.confidence);
  if (!res.substitution.empty()) r["substitution"] = res.substitution;
  if (res.witness) put_witness(r, sigma, *res.witness);
  return {res.verdict == Verdict::inequivalent ? 1 : 0, std::move(r)};
}

Outcome cmd_eval(const Options& o) {
  Automaton a = parse_automaton(read_file(o.first));
  std::string text;
  for (const auto& w : o.word) text += (text.empty() ? "" : " ") + w;
  Report r;
  r["command"] = "eval";
  r["word"] = text;
  if (auto* wfa = std::get_if<Wfa>(&a)) {
    r["value"] = to_string(evaluate(*wfa, parse_word(wfa->alphabet(), text)));
  } else if (auto* vpa = std::get_if<Wvpa>(&a)) {
    r["value"] = to_string(vpa_evaluate(*vpa, parse_word(vpa->alphabet().symbols(), text)));
  } else {
    const Pra& pra = std::get<Pra>(a);
    Word w = parse_word(pra.visible_alphabet(), text);
    std::vector<std::string> expected;
    for (std::size_t j = 0; j < pra.reward_types(); ++j) {
      expected.push_back(to_string(evaluate(expected_reward_automaton(pra, j), w)));
    }
    r["expected_reward"] = expected;
  }
  return {0, std::move(r)};
}

Outcome cmd_zero(const Options& o, const CLI::App& sub) {
  Wfa a = load<Wfa>(o.first, "wfa");
  EquivMethod m = equiv_method(o);
  RandomizedParams p = params_of(o, sub);
  Report r;
  r["command"] = "zero";
  r["method"] = method_name(m);
  if (m == EquivMethod::det) {
    auto w = is_zero_det(a);
    r["verdict"] = w ? "nonzero" : "zero";
    if (w) {
      r["witness"] = format_word(a.alphabet(), *w);
      r["value"] = to_string(evaluate(a, *w));
    }
    return {w ? 1 : 0, std::move(r)};
  }
  r["seed"] = o.seed;
  RandomSource rng(o.seed);
  ZeroResult z;
  switch (m) {
    case EquivMethod::sz: z = zero_sz(a, p.k, rng, p.trials); break;
    case EquivMethod::sz_cex: z = zero_sz_cex(a, p.k, rng, p.trials); break;
    default: z = zero_isolation(a, p.trials, rng, p.extraction_retries); break;
  }
  r["verdict"] = z.nonzero ? "nonzero" : "probably_zero";
  if (!z.nonzero) r["confidence"] = to_string(z.confidence);
  if (z.nonzero) r["length"] = z.length;
  if (z.witness) {
    r["witness"] = format_word(a.alphabet(), *z.witness);
    r["value"] = to_string(z.value);
  }
  return {z.nonzero ? 1 : 0, std::move(r)};
}

Outcome cmd_equiv(const Options& o, const CLI::App& sub) {
  Wfa a = load<Wfa>(o.first, "wfa");
  Wfa b = load<Wfa>(o.second, "wfa");
  EquivMethod m = equiv_method(o);
  Report r;
  r["command"] = "equiv";
  r["method"] = method_name(m);
  if (m != EquivMethod::det) r["seed"] = o.seed;
  RandomSource rng(o.seed);
  EquivResult res = equivalent(a, b, m, params_of(o, sub), rng);
  return equiv_outcome(std::move(r), res, a.alphabet());
}

Outcome cmd_minimal(const Options& o) {
  Wfa a = load<Wfa>(o.first, "wfa");
  Report r;
  r["command"] = "minimal";
  r["states"] = a.states();
  bool minimal = is_minimal(a);
  r["verdict"] = minimal ? "minimal" : "not_minimal";
  if (!minimal) r["minimal_states"] = minimize(a).states();
  return {minimal ? 0 : 1, std::move(r)};
}

Outcome cmd_minimize(const Options& o, const CLI::App& sub) {
  Wfa a = load<Wfa>(o.first, "wfa");
  Report r;
  r["command"] = "minimize";
  Wfa m;
  if (o.require_det || o.method == "det") {
    r["method"] = "det";
    m = minimize(a);
  } else if (o.method == "sz") {
    r["method"] = "sz";
    r["seed"] = o.seed;
    RandomSource rng(o.seed);
    m = minimize(a, sub.count("--k") ? o.k : 0, rng);
  } else {
    throw UsageError("minimize supports --method det or sz");
  }
  r["states_before"] = a.states();
  r["states_after"] = m.states();
  r["automaton"] = render(m);
  return {0, std::move(r)};
}

Outcome cmd_pra_equiv(const Options& o, const CLI::App& sub) {
  Pra a = load<Pra>(o.first, "pra");
  Pra b = load<Pra>(o.second, "pra");
  Report r;
  r["command"] = "pra-equiv";
  r["mode"] = o.mode;
  RandomSource rng(o.seed);
  EquivResult res;
  if (o.mode == "expectation") {
    EquivMethod m = equiv_method(o);
    r["method"] = method_name(m);
    if (m != EquivMethod::det) r["seed"] = o.seed;
    res = expectation_equivalent(a, b, m, params_of(o, sub), rng);
  } else if (o.mode == "distribution") {
    no_deterministic(o, "distribution equivalence");
    r["seed"] = o.seed;
    res = distribution_equivalent(a, b, sub.count("--trials") ? o.trials : 2, rng);
  } else {
    throw UsageError("unknown mode '" + o.mode + "'");
  }
  return equiv_outcome(std::move(r), res, a.visible_alphabet());
}

void put_vpa_result(Report& r, const VpaEquivResult& res) {
  r["verdict"] = res.equivalent ? "probably_equivalent" : "inequivalent";
  r["levels"] = res.levels;
  r["primes"] = res.primes;
  if (res.witness) {
    r["residue"] = res.witness->value;
    r["residue_prime"] = res.witness->prime;
    r["residue_level"] = *res.witness_level;
  }
}

Outcome cmd_vpa_equiv(const Options& o, const CLI::App& sub) {
  no_deterministic(o, "VPA equivalence");
  Wvpa a = load<Wvpa>(o.first, "vpa");
  Wvpa b = load<Wvpa>(o.second, "vpa");
  Report r;
  r["command"] = "vpa-equiv";
  r["seed"] = o.seed;
  RandomSource rng(o.seed);
  std::optional<std::size_t> levels;
  if (sub.count("--levels")) levels = o.levels;
  VpaEquivResult res = vpa_equivalent(a, b, sub.count("--trials") ? o.trials : 10, rng, levels);
  put_vpa_result(r, res);
  return {res.equivalent ? 0 : 1, std::move(r)};
}

Outcome cmd_acit(const Options& o, const CLI::App& sub) {
  no_deterministic(o, "circuit identity");
  Circuit c1 = parse_circuit(read_file(o.first));
  Circuit c2 = parse_circuit(read_file(o.second));
  const std::size_t trials = sub.count("--trials") ? o.trials : 10;
  Report r;
  r["command"] = "acit";
  r["seed"] = o.seed;
  RandomSource rng(o.seed);
  if (o.via_vpa) {
    std::size_t d = std::max(acit_depth(c1), acit_depth(c2));
    r["depth"] = d;
    VpaEquivResult res = vpa_equivalent(acit_to_vpa(c1, d), acit_to_vpa(c2, d), trials, rng);
    put_vpa_result(r, res);
    r["verdict"] = res.equivalent ? "probably_equal" : "unequal";
    return {res.equivalent ? 0 : 1, std::move(r)};
  }
  AcitResult res = acit_equal(c1, c2, trials, rng);
  r["verdict"] = res.equal ? "probably_equal" : "unequal";
  r["primes"] = res.primes;
  if (!res.substitution.empty()) r["substitution"] = res.substitution;
  if (res.left) {
    r["prime"] = res.left->prime;
    r["left"] = res.left->value;
    r["right"] = res.right->value;
  }
  return {res.equal ? 0 : 1, std::move(r)};
}

std::string plain(const Report& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + plain(x);
    return s;
  }
  return v.dump();
}

void print(const Report& r, bool json, std::ostream& out) {
  if (json) {
    out << r.dump() << '\n';
    return;
  }
  std::string block;
  for (const auto& [key, value] : r.items()) {
    if (key == "automaton") {
      block = value.get<std::string>();
    } else if (key == "witness" || key == "word") {
      out << key << ": \"" << value.get<std::string>() << "\"\n";
    } else {
      out << key << ": " << plain(value) << '\n';
    }
  }
  if (!block.empty()) out << '\n' << block;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Equivalence, zeroness and minimisation for weighted automata", "qwa"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub, bool randomized) {
    sub->add_flag("--json", o.json, "Machine-readable report");
    sub->add_flag("--timing", o.timing, "Include wall-clock time in the report");
    if (randomized) {
      sub->add_option("--seed", o.seed, "Random seed");
      sub->add_flag("--require-deterministic", o.require_det, "Refuse probabilistic methods");
    }
  };
  auto methods = [&](CLI::App* sub) {
    sub->add_option("--method", o.method, "det | sz | sz-cex | isolation");
    sub->add_option("--k", o.k, "Sample-set size parameter");
    sub->add_option("--trials", o.trials, "Independent repetitions");
  };

  auto* eval = app.add_subcommand("eval", "Value of a word (expected rewards for a pra file)");
  eval->add_option("file", o.first)->required();
  eval->add_option("word", o.word, "Symbol labels; none for the empty word");
  common(eval, false);

  auto* zero = app.add_subcommand("zero", "Does the automaton assign 0 to every word?");
  zero->add_option("file", o.first)->required();
  common(zero, true);
  methods(zero);

  auto* equiv = app.add_subcommand("equiv", "Equivalence of two weighted automata");
  equiv->add_option("a", o.first)->required();
  equiv->add_option("b", o.second)->required();
  common(equiv, true);
  methods(equiv);

  auto* minimal = app.add_subcommand("minimal", "Is the automaton minimal?");
  minimal->add_option("file", o.first)->required();
  common(minimal, false);

  auto* minim = app.add_subcommand("minimize", "Equivalent automaton of least dimension");
  minim->add_option("file", o.first)->required();
  minim->add_option("--method", o.method, "det | sz");
  minim->add_option("--k", o.k, "Sample-set size parameter (default 3n)");
  common(minim, true);

  auto* pra = app.add_subcommand("pra-equiv", "Equivalence of probabilistic reward automata");
  pra->add_option("a", o.first)->required();
  pra->add_option("b", o.second)->required();
  pra->add_option("--mode", o.mode, "expectation | distribution");
  common(pra, true);
  methods(pra);

  auto* vpa = app.add_subcommand("vpa-equiv", "Equivalence of weighted visibly pushdown automata");
  vpa->add_option("a", o.first)->required();
  vpa->add_option("b", o.second)->required();
  vpa->add_option("--trials", o.trials, "Number of random primes (default 10)");
  vpa->add_option("--levels", o.levels, "Override the level bound n^2");
  common(vpa, true);

  auto* acit = app.add_subcommand("acit", "Do two arithmetic circuits compute the same number?");
  acit->add_option("a", o.first)->required();
  acit->add_option("b", o.second)->required();
  acit->add_option("--trials", o.trials, "Number of random primes (default 10)");
  acit->add_flag("--via-vpa", o.via_vpa, "Decide through the visibly pushdown reduction");
  common(acit, true);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const CLI::App& sub = *app.get_subcommands().front();
  const std::string name = sub.get_name();
  try {
    auto start = std::chrono::steady_clock::now();
    Outcome res;
    if (name == "eval") res = cmd_eval(o);
    else if (name == "zero") res = cmd_zero(o, sub);
    else if (name == "equiv") res = cmd_equiv(o, sub);
    else if (name == "minimal") res = cmd_minimal(o);
    else if (name == "minimize") res = cmd_minimize(o, sub);
    else if (name == "pra-equiv") res = cmd_pra_equiv(o, sub);
    else if (name == "vpa-equiv") res = cmd_vpa_equiv(o, sub);
    else res = cmd_acit(o, sub);
    if (o.timing) {
      double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      res.report["time_ms"] = ms;
    }
    print(res.report, o.json, out);
    return res.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace qwa
