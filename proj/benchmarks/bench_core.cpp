#include <benchmark/benchmark.h>

#include "fbns/convolution.hpp"
#include "fbns/fbm.hpp"
#include "fbns/field.hpp"
#include "fbns/model.hpp"
#include "fbns/series.hpp"

using namespace fbns;

namespace {

void BM_SampleFbmPath(benchmark::State& state) {
  const TimeGrid grid{1.0, static_cast<int>(state.range(0))};
  std::uint64_t stream = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_fbm_path(0.75, grid, 42, stream++));
  }
  state.SetItemsProcessed(state.iterations() * grid.n_steps);
}
BENCHMARK(BM_SampleFbmPath)->Arg(256)->Arg(1024)->Arg(4096);

void BM_SampleFbmPathCholesky(benchmark::State& state) {
  const TimeGrid grid{1.0, static_cast<int>(state.range(0))};
  std::uint64_t stream = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sample_fbm_path(0.75, grid, 42, stream++, FbmGenerator::cholesky));
  }
}
BENCHMARK(BM_SampleFbmPathCholesky)->Arg(256)->Arg(1024);

void BM_Bilinear(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int k_max = static_cast<int>(state.range(1));
  const auto model = StokesModel::fourier(d, k_max);
  const auto u = make_random_field(model, 7, 0);
  const auto v = make_random_field(model, 7, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bilinear(u, v));
  }
}
BENCHMARK(BM_Bilinear)->Args({2, 8})->Args({2, 16})->Args({2, 32})->Args({3, 8});

void BM_LpNorm(benchmark::State& state) {
  const auto model = StokesModel::fourier(2, static_cast<int>(state.range(0)));
  const auto u = make_random_field(model, 7, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(u.lp_norm(4.0));
  }
}
BENCHMARK(BM_LpNorm)->Arg(8)->Arg(16)->Arg(32);

void BM_EigenvalueSeries(benchmark::State& state) {
  SeriesQuery query;
  query.d = static_cast<int>(state.range(0));
  query.q = 0.0;
  query.t = 1e-4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_eigen_series(query, 1e-9));
  }
}
BENCHMARK(BM_EigenvalueSeries)->Arg(2)->Arg(3);

void BM_ConvolveStep(benchmark::State& state) {
  const auto model = StokesModel::diagonal(2, static_cast<int>(state.range(0)));
  const NoiseOperator op{0.0, 1.0};
  const TimeGrid grid{1.0, 256};
  const auto path = CylindricalPath::sample(0.75, grid, model->n_modes(), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(convolve(path, model, op, 8));
  }
  state.SetItemsProcessed(state.iterations() * grid.n_steps *
                          model->n_modes());
}
BENCHMARK(BM_ConvolveStep)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
