#include <benchmark/benchmark.h>

#include "ptosc/operator_build.hpp"

namespace {

void BM_BuildHamiltonian(benchmark::State& state) {
  const ptosc::PotentialSpec spec{1.0, static_cast<int>(state.range(1)), std::nullopt};
  const int dim = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ptosc::build_hamiltonian(spec, dim));
  }
}
BENCHMARK(BM_BuildHamiltonian)->Args({400, 1})->Args({1600, 1})->Args({400, 2});

void BM_BandedApply(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const ptosc::BandedComplexMatrix a =
      ptosc::build_hamiltonian(ptosc::PotentialSpec{1.0, 1, std::nullopt}, dim);
  std::vector<ptosc::Complex> v(static_cast<std::size_t>(dim), ptosc::Complex{1.0, -0.5});
  for (auto _ : state) {
    benchmark::DoNotOptimize(a.apply(v));
  }
}
BENCHMARK(BM_BandedApply)->Arg(400)->Arg(1600);

}  // namespace
