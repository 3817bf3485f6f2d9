#include <benchmark/benchmark.h>

#include "fockforge/elements.hpp"
#include "fockforge/samplers.hpp"

using namespace fockforge;

namespace {

OccupationVector bench_input(int photons, int channels) {
  OccupationVector ket(static_cast<std::size_t>(channels), 0);
  for (int i = 0; i < photons; ++i) ket[static_cast<std::size_t>(i)] = 1;
  return ket;
}

}  // namespace

static void SampleCliffordA(benchmark::State& state) {
  const auto photons = static_cast<int>(state.range(0));
  const int channels = 2 * photons;
  const Eigen::MatrixXcd u = haar_unitary(channels, 9 + photons);
  const OccupationVector input = bench_input(photons, channels);
  SampleConfig cfg;
  cfg.nsamples = 100;
  cfg.seed = 5;
  for (auto _ : state) {
    auto samples = clifford_a_sample(input, u, cfg);
    benchmark::DoNotOptimize(samples);
  }
  state.SetItemsProcessed(state.iterations() * cfg.nsamples);
}
BENCHMARK(SampleCliffordA)->DenseRange(2, 8);

static void SampleMetropolis(benchmark::State& state) {
  const auto photons = static_cast<int>(state.range(0));
  const int channels = 2 * photons;
  const Eigen::MatrixXcd u = haar_unitary(channels, 11 + photons);
  const OccupationVector input = bench_input(photons, channels);
  SampleConfig cfg;
  cfg.nsamples = 100;
  cfg.seed = 6;
  cfg.burn_in = 100;
  cfg.thinning = 1;
  for (auto _ : state) {
    auto samples = metropolis_sample(input, u, cfg);
    benchmark::DoNotOptimize(samples);
  }
  state.SetItemsProcessed(state.iterations() * cfg.nsamples);
}
BENCHMARK(SampleMetropolis)->DenseRange(2, 8);
