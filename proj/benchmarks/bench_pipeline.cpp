#include <benchmark/benchmark.h>

#include "vennfan/edwards.hpp"
#include "vennfan/labels.hpp"
#include "vennfan/presets.hpp"
#include "vennfan/regions.hpp"

using namespace vennfan;

namespace {

const CurveSpec& spec_n7() {
  static const CurveSpec spec = find_preset("fig-cosine-n7")->spec;
  return spec;
}

void BM_Rasterize(benchmark::State& state) {
  const int res = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rasterize(spec_n7(), res));
  state.SetItemsProcessed(state.iterations() * res * res);
}
BENCHMARK(BM_Rasterize)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_Verify(benchmark::State& state) {
  const auto boundaries = sample_boundaries(spec_n7());
  const auto grid = rasterize(spec_n7(), static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(verify(spec_n7(), grid, boundaries));
}
BENCHMARK(BM_Verify)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_PlanLabels(benchmark::State& state) {
  const auto comps = extract_components(rasterize(spec_n7(), 1024));
  for (auto _ : state) benchmark::DoNotOptimize(plan_labels(comps, Variant::Cosine, 7));
}
BENCHMARK(BM_PlanLabels)->Unit(benchmark::kMillisecond);

void BM_EdwardsCensus(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    const auto proj = stereographic_project(build_cogwheel(n), 256);
    const auto grid = rasterize_even_odd(proj.curves, 2048);
    benchmark::DoNotOptimize(census(grid));
  }
}
BENCHMARK(BM_EdwardsCensus)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_StripCensus(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(strip_census(spec_n7(), 8192, 2048));
}
BENCHMARK(BM_StripCensus)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
