#include <benchmark/benchmark.h>

#include <map>

#include <conestream/coning.hpp>
#include <conestream/generators.hpp>
#include <conestream/oracle.hpp>
#include <conestream/streaming_reduction.hpp>

namespace {

using namespace conestream;

const ConvertedFiltration& active_stream(std::int64_t n0) {
  static std::map<std::int64_t, ConvertedFiltration> cache;
  auto it = cache.find(n0);
  if (it == cache.end()) {
    RandomTowerParams p;
    p.n0 = static_cast<std::uint32_t>(n0);
    p.seed = 11;
    it = cache.emplace(n0, convert_to_vector(random_tower(p))).first;
  }
  return it->second;
}

const ConvertedFiltration& torus_stream() {
  static const ConvertedFiltration f = [] {
    TorusParams p;
    p.steps = 20000;
    p.seed = 2024;
    return convert_to_vector(torus_flag_tower(p));
  }();
  return f;
}

void run_reducer(benchmark::State& state, const ConvertedFiltration& f, ReducerOptions opt) {
  std::size_t bars = 0;
  for (auto _ : state) {
    bars = stream_barcode(f.events, opt).size();
    benchmark::DoNotOptimize(bars);
  }
  state.counters["events"] = static_cast<double>(f.events.size());
  state.counters["bars"] = static_cast<double>(bars);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.events.size()));
}

void BM_ReduceImmediate(benchmark::State& state) {
  run_reducer(state, active_stream(state.range(0)), ReducerOptions{});
}
BENCHMARK(BM_ReduceImmediate)->Arg(60)->Arg(200)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_ReduceChunked(benchmark::State& state) {
  ReducerOptions opt;
  opt.mode = ReductionMode::Chunked;
  opt.chunk_size = static_cast<std::size_t>(state.range(1));
  run_reducer(state, active_stream(state.range(0)), opt);
}
BENCHMARK(BM_ReduceChunked)
    ->Args({200, 7})
    ->Args({200, 100})
    ->Args({200, 1000})
    ->Args({500, 1000})
    ->Unit(benchmark::kMillisecond);

void BM_ReduceTorus(benchmark::State& state) {
  ReducerOptions opt;
  if (state.range(0) > 0) {
    opt.mode = ReductionMode::Chunked;
    opt.chunk_size = static_cast<std::size_t>(state.range(0));
  }
  run_reducer(state, torus_stream(), opt);
}
BENCHMARK(BM_ReduceTorus)->Arg(0)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
  const auto& f = active_stream(state.range(0));
  const auto dense = DenseFiltration::from_events(f.events);
  for (auto _ : state) benchmark::DoNotOptimize(oracle_barcode(dense).size());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.events.size()));
}
BENCHMARK(BM_Oracle)->Arg(60)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
