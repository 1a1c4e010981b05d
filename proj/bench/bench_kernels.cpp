// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <vector>

#include "vortexpatch/dynamics.hpp"
#include "vortexpatch/oracle.hpp"

using namespace vortexpatch;

namespace {

DiscretizedPatch perturbed(int n) {
  std::vector<Point> v;
  for (int k = 0; k < n; ++k) {
    const double t = 2 * kPi * k / n;
    const double r = 1.0 + 0.1 * std::cos(3 * t);
    v.push_back({r * std::cos(t), r * std::sin(t)});
  }
  return DiscretizedPatch(PatchRegion(std::vector<std::vector<Point>>{v}));
}

void BM_InducedVelocity(benchmark::State& state) {
  const DiscretizedPatch p = perturbed(static_cast<int>(state.range(0)));
  std::vector<Vec2> out(p.marker_count());
  for (auto _ : state) {
    kernels::induced_velocity(p.view(), p.markers(), out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}

void BM_InducedVelocitySerial(benchmark::State& state) {
  const DiscretizedPatch p = perturbed(static_cast<int>(state.range(0)));
  std::vector<Vec2> out(p.marker_count());
  for (auto _ : state) {
    kernels::induced_velocity_serial(p.view(), p.markers(), out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetComplexityN(state.range(0));
}

void BM_Rasterize(benchmark::State& state) {
  const PatchRegion r = perturbed(512).to_region();
  const auto grid = oracle::grid_for(r, Disk({0, 0}, 1), 1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle::rasterize(r, grid).data());
}

void BM_RasterizeSerial(benchmark::State& state) {
  const PatchRegion r = perturbed(512).to_region();
  const auto grid = oracle::grid_for(r, Disk({0, 0}, 1), 1.0 / static_cast<double>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(oracle::rasterize_serial(r, grid).data());
}

} // namespace

BENCHMARK(BM_InducedVelocity)->RangeMultiplier(2)->Range(128, 2048)->Complexity();
BENCHMARK(BM_InducedVelocitySerial)->RangeMultiplier(2)->Range(128, 2048)->Complexity();
BENCHMARK(BM_Rasterize)->Arg(50)->Arg(100)->Arg(200);
BENCHMARK(BM_RasterizeSerial)->Arg(50)->Arg(100)->Arg(200);

BENCHMARK_MAIN();
