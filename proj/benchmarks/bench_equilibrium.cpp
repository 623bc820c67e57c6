#include <benchmark/benchmark.h>

#include "dynkin/brute_force.hpp"
#include "dynkin/equilibrium.hpp"
#include "dynkin/generate.hpp"
#include "dynkin/verify.hpp"

using namespace dynkin;

static Game make_game(int depth, int branching, bool convex = false) {
  GeneratorSpec spec;
  spec.depth = depth;
  spec.branching = branching;
  spec.convex = convex;
  spec.seed = 7;
  return generate(spec);
}

static void BM_Construct(benchmark::State& state) {
  const Game g = make_game(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(construct(g, 0.05));
  state.counters["nodes"] = static_cast<double>(g.tree.size());
}
BENCHMARK(BM_Construct)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

static void BM_ConstructPure(benchmark::State& state) {
  const Game g = make_game(static_cast<int>(state.range(0)), 3, true);
  for (auto _ : state) benchmark::DoNotOptimize(construct_pure(g, 0.05));
  state.counters["nodes"] = static_cast<double>(g.tree.size());
}
BENCHMARK(BM_ConstructPure)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

static void BM_BestResponse(benchmark::State& state) {
  const Game g = make_game(static_cast<int>(state.range(0)), 3);
  const EquilibriumReport r = construct(g, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(best_response(r.split.game, r.profile.player2, Player::One));
  state.counters["nodes"] = static_cast<double>(r.split.game.tree.size());
}
BENCHMARK(BM_BestResponse)->DenseRange(2, 8, 2);

static void BM_BruteForceValue(benchmark::State& state) {
  GeneratorSpec spec;
  spec.depth = static_cast<int>(state.range(0));
  spec.branching = 1;
  spec.seed = 3;
  const Game g = generate(spec);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_zero_sum_value(g, Player::One));
  state.counters["nodes"] = static_cast<double>(g.tree.size());
}
BENCHMARK(BM_BruteForceValue)->DenseRange(1, 9, 2)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
