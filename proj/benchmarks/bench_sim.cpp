#include <benchmark/benchmark.h>

#include "herd/sim.hpp"
#include "herd/stats.hpp"

using namespace herd;

namespace {

void BM_EpisodeRwalk(benchmark::State& state) {
  const ScenarioSpec s =
      build_scenario(static_cast<Mission>(state.range(0)), SheepVariant::kC3AttractionRepulsion);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_episode(s, RwalkSpec{}, seed++).objective);
  }
}
BENCHMARK(BM_EpisodeRwalk)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_EpisodePfsm(benchmark::State& state) {
  const ScenarioSpec s = build_scenario(Mission::kHerding, SheepVariant::kC1Attraction);
  RngStream rng(7);
  const PfsmConfig cfg = sample_pfsm(rng);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_episode(s, cfg, seed++).objective);
  }
}
BENCHMARK(BM_EpisodePfsm)->Unit(benchmark::kMillisecond);

void BM_EpisodeNn(benchmark::State& state) {
  const ScenarioSpec s = build_scenario(Mission::kDispersion, SheepVariant::kC2Repulsion);
  RngStream rng(7);
  const NnGenome genome = random_genome(rng);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_episode(s, genome, seed++).objective);
  }
}
BENCHMARK(BM_EpisodeNn)->Unit(benchmark::kMillisecond);

void BM_SenseAll(benchmark::State& state) {
  const ScenarioSpec s = build_scenario(Mission::kAggregation, SheepVariant::kC1Attraction);
  const WorldState world = init_episode(s, 3);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sense_all(world.arena, world.robots, i));
    i = (i + 1) % world.robots.size();
  }
}
BENCHMARK(BM_SenseAll);

void BM_NnForward(benchmark::State& state) {
  RngStream rng(9);
  const NnGenome genome = random_genome(rng);
  SensorReadings r;
  r.cam[1] = true;
  r.v_color[1] = {true, 0.7, 1.0};
  const NnInput in = encode_inputs(r);
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward(genome, in));
  }
}
BENCHMARK(BM_NnForward);

void BM_FriedmanEliminate(benchmark::State& state) {
  RngStream rng(11);
  std::vector<std::vector<double>> scores(20, std::vector<double>(state.range(0)));
  for (auto& row : scores) {
    for (double& v : row) v = rng.uniform();
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(friedman_eliminate(scores, 0.05, ObjectiveSense::kMinimize));
  }
}
BENCHMARK(BM_FriedmanEliminate)->Arg(5)->Arg(20)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
