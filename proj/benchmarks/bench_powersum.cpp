// Microbenchmarks contrasting the four routes to S_n(m) and its valuation:
// the O(m) oracle, the doubling recursion, the periodic residue path, and
// the constant-time closed form.  Run manually:
//   build/benchmarks/powsum2_bench --benchmark_min_time=0.2s
#include <benchmark/benchmark.h>

#include "powsum2/moser.hpp"
#include "powsum2/powersum.hpp"
#include "powsum2/valuation.hpp"

#include <cstdint>

using namespace powsum2;

namespace {

// One fixed 60-digit m for the paths that never iterate to m.
const Nat kHugeM = Nat::parse("872346918273640918273645091827364509182736450918273645091827").value();

void BM_OracleSum(benchmark::State& state) {
  const Nat m(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_sum(m, 8));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OracleSum)->RangeMultiplier(4)->Range(64, 16384)->Complexity(benchmark::oN);

void BM_DoublingSum(benchmark::State& state) {
  const Nat m(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(doubling_sum(m, 8));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DoublingSum)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_DoublingSumHuge(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(doubling_sum(kHugeM, 8));
  }
}
BENCHMARK(BM_DoublingSumHuge);

void BM_V2ViaOracle(benchmark::State& state) {
  const Nat m(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(v2(oracle_sum(m, 7)));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_V2ViaOracle)->RangeMultiplier(4)->Range(64, 16384)->Complexity(benchmark::oN);

void BM_V2ClosedForm(benchmark::State& state) {
  const Nat m(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(v2_closed_form(m, 7));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_V2ClosedForm)->RangeMultiplier(4)->Range(64, 16384)->Complexity(benchmark::o1);

void BM_V2ClosedFormHuge(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(v2_closed_form(kHugeM, 7));
  }
}
BENCHMARK(BM_V2ClosedFormHuge);

void BM_V2ModularHuge(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(v2_modular(kHugeM, 7));
  }
}
BENCHMARK(BM_V2ModularHuge);

void BM_MoserSearch(benchmark::State& state) {
  const Nat m_max(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(search(m_max, 4));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MoserSearch)->RangeMultiplier(2)->Range(32, 256)->Complexity();

}  // namespace

BENCHMARK_MAIN();
