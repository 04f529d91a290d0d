#include <benchmark/benchmark.h>

#include "nonholonomy/singularity.hpp"

using namespace nonholonomy;

namespace {

void BM_ExtractC(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  RationalSampler rng(5);
  const FiberPoint fp = FiberPoint::random(n, k, rng);
  for (auto _ : state) benchmark::DoNotOptimize(extract_c_coefficients(fp));
}
BENCHMARK(BM_ExtractC)->Args({4, 1})->Args({6, 1})->Args({7, 2});

void BM_ThinnessProbe(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  ProbeOptions opts;
  opts.threads = 1;
  opts.condition_first_row = true;
  for (auto _ : state) benchmark::DoNotOptimize(thinness_probe(n, k, 50, 9, opts));
}
BENCHMARK(BM_ThinnessProbe)->Args({5, 1})->Args({6, 2})->Args({7, 2})->Unit(benchmark::kMillisecond);

}  // namespace
