#include <benchmark/benchmark.h>

#include "nearcloak/analysis.hpp"

using namespace nearcloak;

static void BM_Sweep(benchmark::State& state) {
  mie::SchemeSpec scheme;
  scheme.kind = mie::SchemeKind::FSH;
  const auto wave = mie::WaveParams::along_x(Dimension::two);
  const auto rhos = analysis::geometric_rhos(0.5, 0.5, 8);
  analysis::SweepOptions options;
  options.parallel = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(analysis::sweep(scheme, Dimension::two, wave, rhos, options));
}
BENCHMARK(BM_Sweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
