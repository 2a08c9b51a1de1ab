#include <benchmark/benchmark.h>

#include "nearcloak/mie.hpp"

using namespace nearcloak;

static void run_solve(benchmark::State& state, Dimension dim, mie::SchemeKind kind) {
  const auto wave = mie::WaveParams::along_x(dim);
  mie::SchemeSpec scheme;
  scheme.kind = kind;
  const auto core = mie::default_core_physical(dim);
  const double rho = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(mie::solve(dim, wave, rho, scheme, core));
}

static void BM_Solve2D_FSH(benchmark::State& s) { run_solve(s, Dimension::two, mie::SchemeKind::FSH); }
static void BM_Solve2D_SH(benchmark::State& s) { run_solve(s, Dimension::two, mie::SchemeKind::SH); }
static void BM_Solve3D_FSS(benchmark::State& s) { run_solve(s, Dimension::three, mie::SchemeKind::FSS); }
BENCHMARK(BM_Solve2D_FSH)->Arg(2)->Arg(1000);
BENCHMARK(BM_Solve2D_SH)->Arg(2)->Arg(1000);
BENCHMARK(BM_Solve3D_FSS)->Arg(2)->Arg(1000);

static void BM_FarField100(benchmark::State& state) {
  const auto wave = mie::WaveParams::along_x(Dimension::two);
  mie::SchemeSpec scheme;
  scheme.kind = mie::SchemeKind::FSH;
  const auto sol = mie::solve(Dimension::two, wave, 0.01, scheme, mie::default_core_physical(Dimension::two));
  const auto angles = mie::observation_angles(Dimension::two, 100);
  for (auto _ : state) benchmark::DoNotOptimize(mie::far_field(sol, angles));
}
BENCHMARK(BM_FarField100);
