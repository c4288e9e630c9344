#include <benchmark/benchmark.h>

#include <vector>

#include "sgs/bench_gen.hpp"
#include "sgs/eval.hpp"
#include "sgs/evolve.hpp"

namespace {

sgs::GameInstance make_game(std::size_t n) {
  sgs::Rng rng = sgs::derive_stream(42, n);
  auto g = sgs::bench::watts_strogatz(n, sgs::bench::family_mean_degree(sgs::bench::Family::moderate, n), 0.3, rng);
  return sgs::bench::generate_game(std::move(g), "bench", {}, rng);
}

// Mixed strategies of a realistic size: several merged random singletons.
std::vector<sgs::Chromosome> make_population(const sgs::GameInstance& game, std::size_t count,
                                             std::size_t strategies) {
  sgs::Rng rng = sgs::derive_stream(7, count, strategies);
  std::vector<sgs::Chromosome> pop;
  for (std::size_t i = 0; i < count; ++i) {
    sgs::Chromosome ch = sgs::random_chromosome(game, rng);
    for (std::size_t s = 1; s < strategies; ++s) {
      ch.strategies.push_back({sgs::random_pure_strategy(game, rng), 1.0});
    }
    ch.normalize();
    pop.push_back(std::move(ch));
  }
  return pop;
}

void population_eval(benchmark::State& state, sgs::Execution exec) {
  const auto game = make_game(static_cast<std::size_t>(state.range(0)));
  const auto base = make_population(game, 200, 6);
  for (auto _ : state) {
    auto pop = base;
    sgs::evaluate_population(pop, game, exec);
    benchmark::DoNotOptimize(pop.front().fitness);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(base.size()));
}

void BM_PopulationSerial(benchmark::State& state) { population_eval(state, sgs::Execution::serial); }
void BM_PopulationParallel(benchmark::State& state) { population_eval(state, sgs::Execution::parallel); }

void BM_BestResponseKernel(benchmark::State& state) {
  const auto game = make_game(static_cast<std::size_t>(state.range(0)));
  const auto pop = make_population(game, 1, 6);
  for (auto _ : state) benchmark::DoNotOptimize(sgs::best_response(pop.front(), game));
}

void BM_BestResponseReference(benchmark::State& state) {
  const auto game = make_game(static_cast<std::size_t>(state.range(0)));
  const auto pop = make_population(game, 1, 6);
  for (auto _ : state) benchmark::DoNotOptimize(sgs::reference::best_response(pop.front(), game));
}

BENCHMARK(BM_PopulationSerial)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PopulationParallel)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BestResponseKernel)->Arg(20)->Arg(100);
BENCHMARK(BM_BestResponseReference)->Arg(20)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
