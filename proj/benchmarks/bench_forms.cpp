#include <benchmark/benchmark.h>

#include "nonholonomy/distributions.hpp"
#include "nonholonomy/forms.hpp"
#include "nonholonomy/linalg.hpp"
#include "nonholonomy/sampling.hpp"

using namespace nonholonomy;

namespace {

DiffForm random_two_form(const Chart& chart, RationalSampler& rng) {
  DiffForm w(chart, 2);
  for (std::size_t i = 0; i < chart.dim(); ++i) {
    for (std::size_t j = i + 1; j < chart.dim(); ++j) {
      w.add_term(MultiIndex::of({i, j}), Polynomial(chart, rng.next()) + rng.next() * Polynomial::variable(chart, i));
    }
  }
  return w;
}

void BM_WedgePower(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Chart chart = Chart::numbered("x", n);
  RationalSampler rng(11);
  const DiffForm w = random_two_form(chart, rng);
  for (auto _ : state) benchmark::DoNotOptimize(wedge_power(w, n / 2));
}
BENCHMARK(BM_WedgePower)->Arg(4)->Arg(6)->Arg(8);

void BM_ExteriorDerivative(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Chart chart = Chart::numbered("x", n);
  RationalSampler rng(12);
  const DiffForm w = random_two_form(chart, rng);
  for (auto _ : state) benchmark::DoNotOptimize(exterior_derivative(w));
}
BENCHMARK(BM_ExteriorDerivative)->Arg(4)->Arg(8);

void BM_RationalRank(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RationalSampler rng(13);
  RationalMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = rng.next();
  }
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_RationalRank)->Arg(8)->Arg(16)->Arg(32);

void BM_DerivedFlagJet(benchmark::State& state) {
  const auto k = static_cast<std::size_t>(state.range(0));
  std::vector<std::string> names{"x"};
  for (std::size_t j = 1; j <= k; ++j) names.push_back("y" + std::to_string(j));
  for (std::size_t j = 1; j <= k; ++j) names.push_back("z" + std::to_string(j));
  const Chart chart(names);
  std::vector<VectorField> frame{VectorField::coordinate(chart, 0)};
  for (std::size_t j = 1; j <= k; ++j) {
    frame[0] += Polynomial::variable(chart, k + j) * VectorField::coordinate(chart, j);
    frame.push_back(VectorField::coordinate(chart, k + j));
  }
  const auto d = Distribution::from_frame(chart, frame);
  const Point pt(chart.dim(), Scalar(1));
  for (auto _ : state) benchmark::DoNotOptimize(derived_flag_at(d, pt));
}
BENCHMARK(BM_DerivedFlagJet)->Arg(2)->Arg(4);

}  // namespace
