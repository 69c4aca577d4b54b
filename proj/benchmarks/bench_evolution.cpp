#include <benchmark/benchmark.h>

#include "tc/closed_form.hpp"
#include "tc/oracle.hpp"

namespace {

// Sector unitary through the closed form (column probing), per atom count.
void BM_ClosedSectorMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const tc::ModelParams params{n, 1.0, 1.0, 2.7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(tc::closed_sector_matrix(params, 10.0, 12));
  }
}
BENCHMARK(BM_ClosedSectorMatrix)->DenseRange(1, 3);

void BM_OracleSectorUnitary(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const tc::ModelParams params{n, 1.0, 1.0, 2.7};
  for (auto _ : state) {
    benchmark::DoNotOptimize(tc::sector_unitary(params, 10.0, 12).matrix);
  }
}
BENCHMARK(BM_OracleSectorUnitary)->DenseRange(1, 3);

// Building the conjugated 2^n grid alone.
void BM_BuildExpA(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tc::exp_A(n, 1.3));
}
BENCHMARK(BM_BuildExpA)->DenseRange(1, 3);

// Evolving a state spread over many sectors.
void BM_EvolveClosedManySectors(benchmark::State& state) {
  tc::JointState psi(3);
  for (long m = 0; m < state.range(0); ++m) psi.add({"eee", m}, 1.0);
  const tc::ModelParams params{3, 1.0, 1.0, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(tc::evolve_closed(params, 4.0, psi));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EvolveClosedManySectors)->RangeMultiplier(4)->Range(4, 256)->Complexity();

}  // namespace

BENCHMARK_MAIN();
