#include <benchmark/benchmark.h>

#include "fockforge/elements.hpp"
#include "fockforge/permanent.hpp"

using namespace fockforge;

static void PermanentGlynn(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const Eigen::MatrixXcd m = haar_unitary(n, 42);
  for (auto _ : state) {
    auto p = glynn_permanent(m);
    benchmark::DoNotOptimize(p);
  }
  state.SetComplexityN(n);
}
BENCHMARK(PermanentGlynn)->DenseRange(4, 16, 2)->Arg(20)->Complexity();

static void PermanentRepeatedSubmatrix(benchmark::State& state) {
  const auto n = static_cast<int>(state.range(0));
  const Eigen::MatrixXcd m = haar_unitary(2 * n, 7);
  std::vector<int> in(static_cast<std::size_t>(2 * n), 0), out = in;
  for (int i = 0; i < n; ++i) in[static_cast<std::size_t>(i)] = 1;
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(2 * n - 1 - i)] = 1;
  for (auto _ : state) {
    auto sub = repeated_submatrix(m, in, out);
    auto p = glynn_permanent(sub);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(PermanentRepeatedSubmatrix)->DenseRange(4, 12, 2);
