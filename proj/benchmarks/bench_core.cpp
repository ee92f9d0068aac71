#include <random>

#include <benchmark/benchmark.h>

#include "sofup/sofup.hpp"

using namespace sofup;

namespace {

Matrix gaussian(Index rows, Index cols, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> d;
  Matrix M(rows, cols);
  for (Index k = 0; k < M.size(); ++k) M.data()[k] = d(gen);
  return M;
}

void BM_OptimalUpdate(benchmark::State& state) {
  const Index n = state.range(0), m = n / 10, p = n / 5;
  const Matrix B = gaussian(n, m, 1), C = gaussian(p, n, 2), D = gaussian(n, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(optimal_update(B, C, D));
}
BENCHMARK(BM_OptimalUpdate)->Arg(50)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_GainUpdaterCached(benchmark::State& state) {
  const Index n = state.range(0), m = n / 10, p = n / 5;
  const GainUpdater updater(gaussian(n, m, 1), gaussian(p, n, 2));
  const Matrix D = gaussian(n, n, 3);
  for (auto _ : state) benchmark::DoNotOptimize(updater.optimal_update(D));
}
BENCHMARK(BM_GainUpdaterCached)->Arg(200)->Arg(400)->Unit(benchmark::kMicrosecond);

void BM_SpectralAbscissa(benchmark::State& state) {
  const Matrix M = gaussian(state.range(0), state.range(0), 4);
  for (auto _ : state) benchmark::DoNotOptimize(spectral_abscissa(M));
}
BENCHMARK(BM_SpectralAbscissa)->Arg(10)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

void BM_BuildProjector(benchmark::State& state) {
  const Index n = state.range(0);
  const Matrix B = gaussian(n, 2, 5), C = gaussian(3, n, 6);
  for (auto _ : state) benchmark::DoNotOptimize(Projector::build(B, C));
}
BENCHMARK(BM_BuildProjector)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_EstimateMdrp(benchmark::State& state) {
  const Index n = state.range(0);
  Matrix M = gaussian(n, n, 7);
  M -= (spectral_abscissa(M) + 0.5) * Matrix::Identity(n, n);
  EstimateOptions opt;
  opt.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(estimate(M, opt));
}
BENCHMARK(BM_EstimateMdrp)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Xi(benchmark::State& state) {
  double k = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(xi(k));
    k = k < 0.9 ? k + 0.01 : 0.1;
  }
}
BENCHMARK(BM_Xi);

}  // namespace

BENCHMARK_MAIN();
