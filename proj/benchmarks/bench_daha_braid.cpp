#include <benchmark/benchmark.h>

#include "toda/nil_daha.hpp"

using namespace toda;

namespace {

// Both sides of the braid relation between the two finite Demazure elements.
void BM_BraidWords(benchmark::State& state) {
  auto d = RootDatum::build(state.range(0) == 0 ? "A2" : state.range(0) == 1 ? "B2" : "G2");
  auto m = *d->braid_order(0, 1);
  auto t1 = daha_theta(d, 0), t2 = daha_theta(d, 1);
  for (auto _ : state) {
    DahaElt lhs = daha_one(d), rhs = daha_one(d);
    for (int k = 0; k < m; ++k) {
      lhs = lhs * (k % 2 ? t2 : t1);
      rhs = rhs * (k % 2 ? t1 : t2);
    }
    benchmark::DoNotOptimize(lhs == rhs);
  }
}
BENCHMARK(BM_BraidWords)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
