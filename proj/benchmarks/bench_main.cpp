#include <benchmark/benchmark.h>

#include <random>

#include "spectradef/builtins.hpp"
#include "spectradef/deformation.hpp"
#include "spectradef/obstruction.hpp"
#include "spectradef/spectral.hpp"

using namespace spectradef;

namespace {

Matrix random_matrix(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(-4, 4);
  Matrix m(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) m(r, c) = Scalar(Rational(dist(rng)), Rational(dist(rng)));
  }
  return m;
}

void BM_Reduce(benchmark::State& state) {
  const Matrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(reduce(m).rank);
}
BENCHMARK(BM_Reduce)->Arg(8)->Arg(16)->Arg(32);

void BM_BuildModel(benchmark::State& state) {
  const ModelSpec spec = state.range(0) == 0 ? iwasawa_spec() : nakamura_spec(1);
  for (auto _ : state) benchmark::DoNotOptimize(build_model(spec).n());
}
BENCHMARK(BM_BuildModel)->Arg(0)->Arg(1);

// All pages up to stabilization on a fresh sequence, with the given thread cap.
void BM_AllPages(benchmark::State& state) {
  const Model model = state.range(0) == 0 ? iwasawa() : nakamura(1);
  const auto threads = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    const SpectralSequence ss(model, {.verify = false, .threads = threads});
    for (int r = 1; r <= ss.stabilization_index(); ++r) benchmark::DoNotOptimize(ss.table(r).size());
  }
}
BENCHMARK(BM_AllPages)->Args({0, 1})->Args({0, 4})->Args({1, 1})->Args({1, 4})->Unit(benchmark::kMillisecond);

void BM_Abelian(benchmark::State& state) {
  const Model model = abelian(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const SpectralSequence ss(model);
    benchmark::DoNotOptimize(ss.table(1).size());
  }
}
BENCHMARK(BM_Abelian)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Kuranishi(benchmark::State& state) {
  const Model model = iwasawa();
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(kuranishi(model, order).solved_through());
}
BENCHMARK(BM_Kuranishi)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Parallelisable(benchmark::State& state) {
  const Model model = iwasawa();
  for (auto _ : state) benchmark::DoNotOptimize(parallelisable_mc(model, 4).solved_through());
}
BENCHMARK(BM_Parallelisable)->Unit(benchmark::kMillisecond);

void BM_CheckCY(benchmark::State& state) {
  const Model model = nakamura(1);
  for (auto _ : state) benchmark::DoNotOptimize(check_cy(model).verdict);
}
BENCHMARK(BM_CheckCY)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
