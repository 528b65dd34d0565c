#include <benchmark/benchmark.h>

#include "decomp/games.hpp"
#include "decomp/random.hpp"
#include "decomp/solver.hpp"
#include "decomp/theories.hpp"

using namespace decomp;

namespace {

void BM_Game(benchmark::State& state, int game) {
  GameSpec g = GameSpec::by_id(game);
  TreeTheory th(g.sig);
  const int k = static_cast<int>(state.range(0));
  std::uint64_t steps = 0;
  for (auto _ : state) {
    Session s;
    Var x = s.var("x");
    Solutions sol = present_solutions(gen_winning(g, k, x, s), th, s);
    steps = sol.raw.stats.steps;
    benchmark::DoNotOptimize(sol.disjuncts.data());
  }
  state.counters["steps"] = static_cast<double>(steps);
}

void BM_GameOne(benchmark::State& state) { BM_Game(state, 1); }
void BM_GameTwo(benchmark::State& state) { BM_Game(state, 2); }

// Solves a fixed batch of random sentences; throughput is sentences/s.
void BM_RandomSentences(benchmark::State& state, TheoryTag tag) {
  Signature sig = tag == TheoryTag::kEq ? Signature::eq() : Signature::ra();
  auto th = make_theory(sig);
  constexpr int kBatch = 50;
  for (auto _ : state) {
    FormulaGen gen(sig, 42);
    RandomShape shape;
    for (int i = 0; i < kBatch; ++i) {
      Session s;
      bool v = finalize_closed(solve_formula(gen.next(s, shape), *th, s));
      benchmark::DoNotOptimize(v);
    }
  }
  state.SetItemsProcessed(state.iterations() * kBatch);
}

void BM_TreeUnifyChain(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Session s;
  std::vector<Var> xs, ys;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(s.fresh("x"));
  for (std::size_t i = 0; i < n; ++i) ys.push_back(s.fresh("y"));
  std::vector<FlatAtom> atoms;
  // x_i = f(x_{i+1}) and x_i = f(y_i): every pair decomposes.
  for (std::size_t i = 0; i + 1 < n; ++i) {
    atoms.push_back(FlatAtom::app(xs[i], "f", {xs[i + 1]}));
    atoms.push_back(FlatAtom::app(xs[i], "f", {ys[i]}));
  }
  Core c = Core::of_atoms(atoms);
  for (auto _ : state) benchmark::DoNotOptimize(tree_unify(c).atoms.size());
  state.SetComplexityN(static_cast<std::int64_t>(n));
}

}  // namespace

BENCHMARK(BM_GameOne)->DenseRange(1, 8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GameTwo)->DenseRange(1, 2)->Unit(benchmark::kMillisecond)->Iterations(1);
BENCHMARK_CAPTURE(BM_RandomSentences, eq, TheoryTag::kEq)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_RandomSentences, ra, TheoryTag::kRa)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TreeUnifyChain)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

BENCHMARK_MAIN();
