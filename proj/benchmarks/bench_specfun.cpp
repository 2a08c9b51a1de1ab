#include <benchmark/benchmark.h>

#include "nearcloak/specfun.hpp"

using namespace nearcloak;

static void BM_CylindricalSequence(benchmark::State& state) {
  const cplx z(0.02, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(specfun::cylindrical(specfun::Kind::H1, static_cast<int>(state.range(0)), z));
}
BENCHMARK(BM_CylindricalSequence)->Arg(16)->Arg(64)->Arg(199);

static void BM_SphericalSequence(benchmark::State& state) {
  const cplx z(1.5, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(specfun::spherical(specfun::Kind::J, static_cast<int>(state.range(0)), z));
}
BENCHMARK(BM_SphericalSequence)->Arg(16)->Arg(64)->Arg(199);

static void BM_SingleHankel(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(specfun::bessel_h1(3, cplx(7.0, 2.0)));
}
BENCHMARK(BM_SingleHankel);
