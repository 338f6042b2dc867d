#include <benchmark/benchmark.h>

#include "pcax/matrix.hpp"
#include "pcax/noise_model.hpp"
#include "pcax/pca.hpp"
#include "pcax/rng.hpp"
#include "pcax/stats.hpp"
#include "pcax/varfit.hpp"

namespace {

using namespace pcax;

Matrix make_symmetric(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double v = rng.gaussian();
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

DataMatrix make_dataset(std::size_t n, std::size_t q, std::uint64_t seed) {
  Rng rng(seed);
  Matrix values(n, q);
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) {
    names[i] = "f" + std::to_string(i);
    for (std::size_t j = 0; j < q; ++j) values(i, j) = rng.gaussian();
  }
  return DataMatrix(names, values);
}

void BM_SymmetricEigen(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix k = make_symmetric(n, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(symmetric_eigen(k));
  }
}
BENCHMARK(BM_SymmetricEigen)->Arg(4)->Arg(16)->Arg(64);

void BM_Matmul(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(11);
  Matrix a(n, n);
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = rng.gaussian();
      b(i, j) = rng.gaussian();
    }
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(matmul(a, b));
  }
}
BENCHMARK(BM_Matmul)->Arg(32)->Arg(128);

void BM_PcaFitCorrelation(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const DataMatrix x = make_dataset(n, 500, 13);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit(x, PcaMode::correlation));
  }
}
BENCHMARK(BM_PcaFitCorrelation)->Arg(8)->Arg(32);

void BM_LmFitExponential(benchmark::State& state) {
  VarianceCurve curve;
  curve.dataset_name = "bench";
  for (int m = 1; m <= 40; ++m) {
    curve.xs.push_back(m);
    curve.ys.push_back(1.0 - std::exp(-0.6 * m));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(lm_fit_exponential(curve));
  }
}
BENCHMARK(BM_LmFitExponential);

void BM_NoiseTrial(benchmark::State& state) {
  NoiseSimConfig config;
  config.ratio_grid = {1.0};
  std::size_t t = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(noise_trial(config, 0, t++));
  }
}
BENCHMARK(BM_NoiseTrial);

}  // namespace

BENCHMARK_MAIN();
