#include <benchmark/benchmark.h>

#include <Eigen/SVD>

#include "ptosc/operator_build.hpp"
#include "ptosc/resolvent.hpp"

namespace {

// Banded inverse iteration versus the dense SVD it replaces.
void BM_ResolventBanded(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const ptosc::BandedComplexMatrix a =
      ptosc::build_hamiltonian(ptosc::PotentialSpec{1.0, 1, std::nullopt}, dim);
  const ptosc::Complex lambda{8.0, 2.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ptosc::resolvent_norm(a, lambda));
  }
}
BENCHMARK(BM_ResolventBanded)->Arg(200)->Arg(400)->Arg(1600);

void BM_ResolventDenseSvd(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const ptosc::BandedComplexMatrix a =
      ptosc::build_hamiltonian(ptosc::PotentialSpec{1.0, 1, std::nullopt}, dim);
  const ptosc::Complex lambda{8.0, 2.0};
  for (auto _ : state) {
    Eigen::MatrixXcd m = a.dense();
    m.diagonal().array() -= lambda;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    benchmark::DoNotOptimize(svd.singularValues().minCoeff());
  }
}
BENCHMARK(BM_ResolventDenseSvd)->Arg(200);

void BM_SweepGrid(benchmark::State& state) {
  const ptosc::BandedComplexMatrix a =
      ptosc::build_hamiltonian(ptosc::PotentialSpec{1.0, 1, std::nullopt}, 400);
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ptosc::sweep_grid(a, {0.0, 20.0}, {-6.0, 10.0}, 8, 8, threads));
  }
}
BENCHMARK(BM_SweepGrid)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
