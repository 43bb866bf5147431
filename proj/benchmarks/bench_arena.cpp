#include <benchmark/benchmark.h>

#include <vector>

#include "arena/arena.hpp"

namespace {

arena::ResultCounts brazil_train() {
  arena::ResultCounts c(arena::worldcup::knockout_arena());
  for (int code : {3, 3, 2, 5, 5, 3, 2, 5, 5, 2}) c.add(arena::worldcup::code_to_state(code));
  return c;
}

void BM_MomentTable(benchmark::State& state) {
  const arena::ArenaSpec spec(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(arena::build_moment_table(spec, 0.7));
}
BENCHMARK(BM_MomentTable)->Arg(2)->Arg(8)->Arg(24);

void BM_ResultProbApprox(benchmark::State& state) {
  const arena::ArenaSpec spec(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  const auto table = arena::build_moment_table(spec, 0.7);
  for (auto _ : state) benchmark::DoNotOptimize(arena::result_prob_approx(table, 0.4));
}
BENCHMARK(BM_ResultProbApprox)->Arg(2)->Arg(8)->Arg(24);

void BM_BuildLattice(benchmark::State& state) {
  const arena::ArenaSpec spec(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  const auto prior = arena::DensityGrid::standard_normal();
  for (auto _ : state) benchmark::DoNotOptimize(arena::build_lattice(spec, prior));
}
BENCHMARK(BM_BuildLattice)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_MapEstimate(benchmark::State& state) {
  const auto prior = arena::DensityGrid::standard_normal();
  const auto data = brazil_train();
  const auto spec = arena::worldcup::knockout_arena();
  for (auto _ : state) benchmark::DoNotOptimize(arena::map_estimate(spec, prior, data));
}
BENCHMARK(BM_MapEstimate)->Unit(benchmark::kMillisecond);

void BM_SimulatorRun(benchmark::State& state) {
  arena::SimConfig c;
  c.spec = arena::ArenaSpec(2, 2);
  c.population = static_cast<std::size_t>(state.range(0));
  c.background_rho = 0.5;
  const arena::Simulator sim(c);
  std::vector<arena::State> finals(sim.player_count());
  std::size_t r = 0;
  for (auto _ : state) {
    sim.run(r++, finals);
    benchmark::DoNotOptimize(finals.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * state.range(0));
}
BENCHMARK(BM_SimulatorRun)->Arg(1024)->Arg(1 << 16);

}  // namespace

BENCHMARK_MAIN();
