#include <benchmark/benchmark.h>

#include "fockforge/cores.hpp"
#include "fockforge/elements.hpp"

using namespace fockforge;

namespace {

// one photon in each of the first n of 2n channels, as in the timing tables
State table_input(int photons, int channels) {
  OccupationVector ket(static_cast<std::size_t>(channels), 0);
  for (int i = 0; i < photons; ++i) ket[static_cast<std::size_t>(i)] = 1;
  State s(channels, 1);
  s.add_term(1.0, ket);
  return s;
}

void run_transform(benchmark::State& state, CoreKind core, const BasisSpec& basis) {
  const auto photons = static_cast<int>(state.range(0));
  const int channels = 2 * photons;
  const Eigen::MatrixXcd u = haar_unitary(channels, 1234 + photons);
  const State input = table_input(photons, channels);
  for (auto _ : state) {
    State out = transform(input, u, core, basis);
    benchmark::DoNotOptimize(out);
  }
}

}  // namespace

static void TransformDirectFull(benchmark::State& state) {
  run_transform(state, CoreKind::Direct, BasisSpec::full());
}
BENCHMARK(TransformDirectFull)->DenseRange(2, 6);

static void TransformDirectRestricted(benchmark::State& state) {
  run_transform(state, CoreKind::Direct, BasisSpec::restricted());
}
BENCHMARK(TransformDirectRestricted)->DenseRange(2, 6);

static void TransformGlynnFull(benchmark::State& state) {
  run_transform(state, CoreKind::Glynn, BasisSpec::full());
}
BENCHMARK(TransformGlynnFull)->DenseRange(2, 7);

static void TransformGlynnRestricted(benchmark::State& state) {
  run_transform(state, CoreKind::Glynn, BasisSpec::restricted());
}
BENCHMARK(TransformGlynnRestricted)->DenseRange(2, 7);
