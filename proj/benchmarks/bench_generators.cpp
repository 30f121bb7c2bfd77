#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>
#include <random>

#include <conestream/generators.hpp>

namespace {

using namespace conestream;

void BM_RandomTower(benchmark::State& state) {
  RandomTowerParams p;
  p.n0 = static_cast<std::uint32_t>(state.range(0));
  std::size_t ops = 0;
  for (auto _ : state) {
    ++p.seed;
    ops = random_tower(p).size();
    benchmark::DoNotOptimize(ops);
  }
  state.counters["ops"] = static_cast<double>(ops);
}
BENCHMARK(BM_RandomTower)->Arg(60)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_TorusTower(benchmark::State& state) {
  TorusParams p;
  p.steps = static_cast<std::uint64_t>(state.range(0));
  std::size_t ops = 0;
  for (auto _ : state) {
    TorusFlagTower gen(p);
    ops = 0;
    while (gen.next()) ++ops;
    benchmark::DoNotOptimize(ops);
  }
  state.counters["ops"] = static_cast<double>(ops);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ops));
}
BENCHMARK(BM_TorusTower)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

Barcode random_barcode(std::mt19937_64& rng, int bars) {
  std::vector<SimplexIndex> times(2 * static_cast<std::size_t>(bars - 1));
  std::iota(times.begin(), times.end(), SimplexIndex{1});
  std::shuffle(times.begin(), times.end(), rng);
  Barcode b;
  b.add(0, 0, kInfinity);
  for (int i = 1; i < bars; ++i) {
    const SimplexIndex x = times[2 * (i - 1)], y = times[2 * (i - 1) + 1];
    const int dim = static_cast<int>(rng() % 4);
    if (rng() % 4 == 0)
      b.add(dim, x, kInfinity);
    else
      b.add(dim, std::min(x, y), std::max(x, y));
  }
  return b;
}

void BM_FiltrationFromBarcode(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const Barcode b = random_barcode(rng, static_cast<int>(state.range(0)));
  std::size_t events = 0;
  for (auto _ : state) {
    events = filtration_from_barcode(b).events.size();
    benchmark::DoNotOptimize(events);
  }
  state.counters["events"] = static_cast<double>(events);
}
BENCHMARK(BM_FiltrationFromBarcode)->Arg(50)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
