#include <benchmark/benchmark.h>

#include "dynkin/generate.hpp"
#include "dynkin/matrix_game.hpp"
#include "dynkin/zerosum.hpp"

using namespace dynkin;

static Game make_game(int depth, int branching) {
  GeneratorSpec spec;
  spec.depth = depth;
  spec.branching = branching;
  spec.seed = 42;
  return generate(spec);
}

static void BM_SolveMaxmin(benchmark::State& state) {
  const StageMatrix m{{{0.3, -0.2, 0.9, 0.1}, {0.5, 0.5, -0.4, 0.2}, {-0.1, 0.7, 0.6, -0.3}}};
  for (auto _ : state) benchmark::DoNotOptimize(solve_maxmin(m, 1e-12));
}
BENCHMARK(BM_SolveMaxmin);

static void BM_SolveValueProcess(benchmark::State& state) {
  const Game g = make_game(static_cast<int>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(solve_value_process(g, Player::One));
  state.counters["nodes"] = static_cast<double>(g.tree.size());
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.tree.size()));
}
BENCHMARK(BM_SolveValueProcess)->DenseRange(2, 8, 2);

static void BM_HittingTime(benchmark::State& state) {
  const Game g = make_game(static_cast<int>(state.range(0)), 3);
  const ValueProcess v = solve_value_process(g, Player::Two);
  for (auto _ : state) benchmark::DoNotOptimize(hitting_time(g, v, 0.05));
  state.counters["nodes"] = static_cast<double>(g.tree.size());
}
BENCHMARK(BM_HittingTime)->DenseRange(2, 8, 2);

BENCHMARK_MAIN();
