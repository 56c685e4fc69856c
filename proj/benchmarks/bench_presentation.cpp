#include <benchmark/benchmark.h>

#include "toda/nil_daha.hpp"

using namespace toda;

namespace {

void BM_VerifyPresentation(benchmark::State& state) {
  static const char* types[] = {"A1", "A2", "B2", "G2"};
  auto d = RootDatum::build(types[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(verify_presentation(d, static_cast<unsigned>(state.range(1))).all_pass());
}
BENCHMARK(BM_VerifyPresentation)->ArgsProduct({{0, 1, 2, 3}, {2, 4}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
