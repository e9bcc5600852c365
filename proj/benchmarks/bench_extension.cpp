#include <benchmark/benchmark.h>

#include "projext/extension.hpp"
#include "projext/generators.hpp"
#include "projext/sampling.hpp"

using namespace projext;

static void BM_SpectralDecomposition(benchmark::State& state) {
  const AlgebraDescriptor a = AlgebraDescriptor::full_matrix(static_cast<int>(state.range(0)));
  Rng rng(1);
  const Operator x = random_degenerate_selfadjoint(a, rng);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_decomposition(x));
}
BENCHMARK(BM_SpectralDecomposition)->Arg(2)->Arg(4)->Arg(8);

static void BM_JordanBattery(benchmark::State& state) {
  const InstanceBundle b = random_instance(SpecKind::injective, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(jordan_battery(b.ground_truth, static_cast<int>(state.range(0)), 1));
  }
}
BENCHMARK(BM_JordanBattery)->Arg(100)->Arg(500);

static void BM_SpectralRoute(benchmark::State& state) {
  const InstanceBundle b = random_instance(SpecKind::injective, static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(spectral_route(b.problem));
}
BENCHMARK(BM_SpectralRoute)->Arg(1)->Arg(2)->Arg(3);

static void BM_ExtendFull(benchmark::State& state) {
  const InstanceBundle b = random_instance(SpecKind::injective, 42);
  ExtendOptions opt;
  opt.samples = static_cast<int>(state.range(0));
  opt.certificates = state.range(1) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(extend_full(b.problem, opt));
}
BENCHMARK(BM_ExtendFull)->Args({100, 0})->Args({100, 1})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
