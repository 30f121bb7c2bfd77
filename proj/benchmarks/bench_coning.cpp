#include <benchmark/benchmark.h>

#include <conestream/coning.hpp>
#include <conestream/generators.hpp>

namespace {

using namespace conestream;

std::vector<TowerOp> random_case(std::int64_t n0) {
  RandomTowerParams p;
  p.n0 = static_cast<std::uint32_t>(n0);
  p.seed = 7;
  return random_tower(p);
}

void BM_ActiveConing(benchmark::State& state) {
  const auto tower = random_case(state.range(0));
  std::uint64_t out = 0;
  for (auto _ : state) {
    const auto stats = convert(tower, [](const FiltrationEvent&, std::uint64_t) {});
    out = stats.total_output;
    benchmark::DoNotOptimize(out);
  }
  state.counters["ops"] = static_cast<double>(tower.size());
  state.counters["events"] = static_cast<double>(out);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(tower.size()));
}
BENCHMARK(BM_ActiveConing)->Arg(20)->Arg(60)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_FullConing(benchmark::State& state) {
  const auto tower = random_case(state.range(0));
  std::uint64_t out = 0;
  for (auto _ : state) {
    const auto stats = convert_full_coning(tower, [](const FiltrationEvent&, std::uint64_t) {});
    out = stats.total_output;
    benchmark::DoNotOptimize(out);
  }
  state.counters["ops"] = static_cast<double>(tower.size());
  state.counters["events"] = static_cast<double>(out);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(tower.size()));
}
BENCHMARK(BM_FullConing)->Arg(20)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_TightnessTower(benchmark::State& state) {
  const auto tower = tightness_tower(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const auto stats = convert(tower, [](const FiltrationEvent&, std::uint64_t) {});
    benchmark::DoNotOptimize(stats.total_output);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(tower.size()));
}
BENCHMARK(BM_TightnessTower)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

}  // namespace
