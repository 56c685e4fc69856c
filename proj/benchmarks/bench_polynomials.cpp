#include <benchmark/benchmark.h>

#include "toda/exact_algebra.hpp"

using namespace toda;

namespace {

// (x0 + x1 + ... + hbar + 1/3)^k in n + 1 variables.
MultiPoly base(std::size_t nvars) {
  MultiPoly p = MultiPoly::constant(nvars, Rational(1, 3));
  for (std::size_t i = 0; i < nvars; ++i) p += MultiPoly::variable(nvars, i);
  return p;
}

void BM_PolyMultiply(benchmark::State& state) {
  auto nvars = static_cast<std::size_t>(state.range(0));
  MultiPoly p = base(nvars).pow(static_cast<unsigned>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(p * p);
}
BENCHMARK(BM_PolyMultiply)->Args({2, 4})->Args({3, 4})->Args({3, 6})->Args({4, 4});

void BM_ExactDivide(benchmark::State& state) {
  auto nvars = static_cast<std::size_t>(state.range(0));
  MultiPoly q = base(nvars);
  MultiPoly p = q.pow(static_cast<unsigned>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(exact_divide(p, q));
}
BENCHMARK(BM_ExactDivide)->Args({2, 6})->Args({3, 6});

}  // namespace

BENCHMARK_MAIN();
