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

#include "qwa/acit.hpp"
#include "qwa/modular.hpp"
#include "qwa/randomized.hpp"

#include <benchmark/benchmark.h>

#include <stdexcept>

namespace {

using namespace qwa;

ModMatrix random_mod(std::size_t n, std::uint64_t p, RandomSource& rng) {
  ModMatrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.next() % p;
  }
  return m;
}

Rational small(RandomSource& rng) { return make_rational(static_cast<long>(rng.uniform(0, 4)) - 2, 1); }

Wfa random_wfa(std::size_t n, std::size_t symbols, RandomSource& rng) {
  std::vector<std::string> labels;
  std::vector<QMatrix> trans;
  for (std::size_t s = 0; s < symbols; ++s) {
    labels.push_back(std::string(1, static_cast<char>('a' + s)));
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, small(rng));
    }
    trans.push_back(std::move(m));
  }
  QVector init(n, Orientation::row), final(n, Orientation::column);
  init.set(0, 1);
  final.set(n - 1, 1);
  return Wfa(Alphabet(labels), trans, init, final);
}

Wvpa random_wvpa(std::size_t n, std::size_t stack, RandomSource& rng) {
  auto mat = [&] {
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m.set(i, j, small(rng));
    }
    return m;
  };
  std::vector<std::string> gammas;
  std::vector<std::vector<QMatrix>> call(1), ret(1);
  for (std::size_t g = 0; g < stack; ++g) {
    gammas.push_back("g" + std::to_string(g));
    call[0].push_back(mat());
    ret[0].push_back(mat());
  }
  QVector init(n, Orientation::row), final(n, Orientation::column);
  init.set(0, 1);
  final.set(n - 1, 1);
  return Wvpa(VisiblyAlphabet({"c"}, {"r"}, {"i"}), gammas, call, ret, {mat()}, init, final);
}

template <ModMatrix (*Mul)(const ModMatrix&, const ModMatrix&)>
void BM_mod_matmul(benchmark::State& state) {
  RandomSource rng(1);
  const std::uint64_t p = random_prime(rng);
  const auto n = static_cast<std::size_t>(state.range(0));
  ModMatrix a = random_mod(n, p, rng), b = random_mod(n, p, rng);
  for (auto _ : state) benchmark::DoNotOptimize(Mul(a, b));
}
BENCHMARK(BM_mod_matmul<mod_matmul>)->Name("mod_matmul/parallel")->Arg(64)->Arg(128)->Arg(256);
BENCHMARK(BM_mod_matmul<mod_matmul_serial>)->Name("mod_matmul/serial")->Arg(64)->Arg(128)->Arg(256);

// An automaton, weights and polynomial for which extraction succeeds.
struct IsolationCase {
  Wfa a;
  IsolationWeights w;
  UPoly p;
};

IsolationCase isolation_case(std::size_t n) {
  RandomSource rng(n);
  for (;;) {
    Wfa a = random_wfa(n, 3, rng);
    IsolationWeights w = draw_isolation_weights(n, 3, rng);
    UPoly p = isolation_polynomial(a, w);
    if (p.is_zero()) continue;
    try {
      isolation_cex_serial(a, w, p);
      return {a, w, p};
    } catch (const IsolationFailed&) {
    }
  }
}

template <Word (*Extract)(const Wfa&, const IsolationWeights&, const UPoly&)>
void BM_isolation_cex(benchmark::State& state) {
  IsolationCase c = isolation_case(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Extract(c.a, c.w, c.p));
}
BENCHMARK(BM_isolation_cex<isolation_cex>)
    ->Name("isolation_cex/parallel")
    ->Arg(4)
    ->Arg(6)
    ->Arg(8)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_isolation_cex<isolation_cex_serial>)
    ->Name("isolation_cex/serial")
    ->Arg(4)
    ->Arg(6)
    ->Arg(8)
    ->Unit(benchmark::kMillisecond);

template <bool Parallel>
void BM_vpa_equivalent(benchmark::State& state) {
  RandomSource gen(7);
  const auto n = static_cast<std::size_t>(state.range(0));
  Wvpa a = random_wvpa(n, 2, gen);
  for (auto _ : state) {
    RandomSource rng(3);
    // Self-comparison runs every prime through every level.
    VpaEquivResult r = Parallel ? vpa_equivalent(a, a, 8, rng) : vpa_equivalent_serial(a, a, 8, rng);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_vpa_equivalent<true>)
    ->Name("vpa_equivalent/parallel")
    ->Arg(2)
    ->Arg(3)
    ->Arg(4)
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_vpa_equivalent<false>)
    ->Name("vpa_equivalent/serial")
    ->Arg(2)
    ->Arg(3)
    ->Arg(4)
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
