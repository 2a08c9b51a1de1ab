#include <benchmark/benchmark.h>

#include "nearcloak/bie.hpp"

using namespace nearcloak;

static void BM_KiteSolve(benchmark::State& state) {
  const auto curve = bie::BoundaryCurve::kite(static_cast<int>(state.range(0)));
  const auto wave = mie::WaveParams::along_x(Dimension::two);
  for (auto _ : state) benchmark::DoNotOptimize(bie::assemble_and_solve(curve, wave));
}
BENCHMARK(BM_KiteSolve)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
