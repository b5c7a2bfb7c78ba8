#include <doctest.h>

#include <cmath>
#include <random>

#include "ptosc/grid_function.hpp"
#include "ptosc/hermite.hpp"
#include "ptosc/operator_build.hpp"

using namespace ptosc;

namespace {

// Quadrature oracle for matrix elements <psi_j | x | psi_k>, independent of
// the ladder-operator assembly.
double position_element_by_quadrature(int j, int k) {
  const int count = 40001;
  const double lo = -20.0, hi = 20.0;
  const double dx = (hi - lo) / (count - 1);
  double acc = 0.0;
  for (int i = 0; i < count; ++i) {
    const double x = lo + i * dx;
    const auto psi = hermite_function_column(std::max(j, k) + 1, x);
    const double w = (i == 0 || i == count - 1) ? 0.5 : 1.0;
    acc += w * x * psi[static_cast<std::size_t>(j)] * psi[static_cast<std::size_t>(k)] * dx;
  }
  return acc;
}

}  // namespace

TEST_CASE("position matrix entries match the quadrature oracle") {
  const BandedComplexMatrix x = build_position_matrix(3, 0);
  CHECK(x.dim() == 3);
  CHECK(x(0, 1).real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(x(1, 2).real() == doctest::Approx(1.0).epsilon(1e-15));
  // independent oracle
  CHECK(x(0, 1).real() == doctest::Approx(position_element_by_quadrature(0, 1)).epsilon(1e-10));
  CHECK(x(1, 2).real() == doctest::Approx(position_element_by_quadrature(1, 2)).epsilon(1e-10));

  SUBCASE("diagonal vanishes by parity") {
    const BandedComplexMatrix big = build_position_matrix(50, 0);
    for (int k = 0; k < 50; ++k) CHECK(big(k, k) == Complex{0.0});
  }
  SUBCASE("dimension one is the zero matrix") {
    const BandedComplexMatrix one = build_position_matrix(1, 0);
    CHECK(one.dim() == 1);
    CHECK(one(0, 0) == Complex{0.0});
  }
  SUBCASE("padding extends the dimension") {
    CHECK(build_position_matrix(3, 4).dim() == 7);
  }
}

TEST_CASE("harmonic oscillator Hamiltonian is diagonal") {
  const PotentialSpec spec{0.0, 1, std::nullopt};
  const BandedComplexMatrix a = build_hamiltonian(spec, 4);
  for (int k = 0; k < 4; ++k) CHECK(a(k, k) == Complex{2.0 * k + 1.0});
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if (r != c) CHECK(a(r, c) == Complex{0.0});
}

TEST_CASE("cubic term entries agree with a dense matrix cube") {
  const PotentialSpec spec{1.0, 1, std::nullopt};
  const int dim = 8;
  const BandedComplexMatrix a = build_hamiltonian(spec, dim);

  // Dense oracle: cube the padded tridiagonal with Eigen, truncate.
  const int padded = dim + 3;
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(padded, padded);
  for (int k = 0; k + 1 < padded; ++k) {
    x(k, k + 1) = std::sqrt((k + 1) / 2.0);
    x(k + 1, k) = x(k, k + 1);
  }
  const Eigen::MatrixXd x3 = x * x * x;

  CHECK(a(0, 0) == Complex{1.0});  // diagonal of X^3 vanishes by parity
  const double expected_01 = std::pow(2.0, -1.5) + std::pow(2.0, -0.5);
  CHECK(a(0, 1).imag() == doctest::Approx(expected_01).epsilon(1e-15));
  CHECK(a(0, 1).imag() == doctest::Approx(x3(0, 1)).epsilon(1e-14));
  for (int r = 0; r < dim; ++r)
    for (int c = std::max(0, r - 3); c <= std::min(dim - 1, r + 3); ++c) {
      const Complex want{r == c ? 2.0 * r + 1.0 : 0.0, x3(r, c)};
      CHECK(std::abs(a(r, c) - want) < 1e-12);
    }
}

TEST_CASE("assembly rejects dimensions too small for the band") {
  CHECK_THROWS_AS(build_hamiltonian(PotentialSpec{1.0, 1, std::nullopt}, 3), ValidationError);
  CHECK_THROWS_AS(build_hamiltonian(PotentialSpec{1.0, 2, std::nullopt}, 5), ValidationError);
  CHECK_NOTHROW(build_hamiltonian(PotentialSpec{1.0, 2, std::nullopt}, 6));
}

TEST_CASE("structure invariants across beta, n, dim") {
  for (const double beta : {0.5, 1.0}) {
    for (const int n : {1, 2}) {
      for (const int dim : {32, 100}) {
        CAPTURE(beta);
        CAPTURE(n);
        CAPTURE(dim);
        const PotentialSpec spec{beta, n, std::nullopt};
        const BandedComplexMatrix a = build_hamiltonian(spec, dim);

        // exact PT symmetry
        CHECK(a.max_pt_symmetry_violation() == 0.0);
        // band discipline
        CHECK(a.bandwidth() == 2 * n + 1);
        // Hermitian part is the exact oscillator diagonal
        const Eigen::MatrixXcd herm = a.hermitian_part_dense();
        double worst = 0.0;
        for (int r = 0; r < dim; ++r)
          for (int c = 0; c < dim; ++c) {
            const double want = r == c ? 2.0 * r + 1.0 : 0.0;
            worst = std::max(worst, std::abs(herm(r, c) - Complex{want}));
          }
        CHECK(worst == 0.0);
        // accretivity: smallest eigenvalue of the Hermitian part is 1
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() == doctest::Approx(1.0).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("padded truncation reproduces the wide product exactly") {
  for (const int n : {1, 2}) {
    const int dim = 24;
    const int power = 2 * n + 1;
    const BandedComplexMatrix tight =
        banded_power(build_position_matrix(dim, power), power).truncated(dim, power);
    const BandedComplexMatrix wide =
        banded_power(build_position_matrix(dim, 10), power).truncated(dim, power);
    double worst = 0.0;
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) worst = std::max(worst, std::abs(tight(r, c) - wide(r, c)));
    CHECK(worst == 0.0);

    // an unpadded product corrupts only the last `power` rows and columns
    const BandedComplexMatrix unpadded =
        banded_power(build_position_matrix(dim, 0), power).truncated(dim, power);
    for (int r = 0; r < dim - power; ++r)
      for (int c = 0; c < dim - power; ++c)
        CHECK(std::abs(unpadded(r, c) - wide(r, c)) == 0.0);
  }
}

TEST_CASE("semiclassical assembly at h = 1 collapses to the physical operator") {
  const PotentialSpec semi{1.0, 1, 1.0};
  const PotentialSpec phys{1.0, 1, std::nullopt};
  const int dim = 20;
  const BandedComplexMatrix a_semi = build_hamiltonian(semi, dim);
  const BandedComplexMatrix a_phys = build_hamiltonian(phys, dim);
  double worst = 0.0;
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) worst = std::max(worst, std::abs(a_semi(r, c) - a_phys(r, c)));
  CHECK(worst < 1e-13);
}

TEST_CASE("semiclassical coefficient scaling") {
  // n = 1, h: the x^2 coefficient is h^{2/5}.
  const double h = 0.01;
  const PotentialSpec spec{1.0, 1, h};
  CHECK(spec.quadratic_coefficient() == doctest::Approx(std::pow(h, 0.4)).epsilon(1e-15));
  CHECK(spec.kinetic_coefficient() == doctest::Approx(h * h).epsilon(1e-15));
  // n = 2: exponent (4n-2)/(2n+3) = 6/7.
  const PotentialSpec spec2{1.0, 2, h};
  CHECK(spec2.quadratic_coefficient() == doctest::Approx(std::pow(h, 6.0 / 7.0)).epsilon(1e-15));
}

TEST_CASE("real-space application: Gaussian ground state") {
  const PotentialSpec spec{0.0, 1, std::nullopt};
  const GridFunction f = GridFunction::uniform(-12.0, 12.0, 4001, [](double x) {
    return Complex{std::exp(-0.5 * x * x)};
  });
  const GridFunction hf = apply_hamiltonian(spec, f);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i)
    worst = std::max(worst, std::abs(hf.values[i] - f.values[i]));
  CHECK(worst < 1e-9);  // eigenvalue 1, discretization error only
}

TEST_CASE("real-space application: cubic potential acts pointwise") {
  const PotentialSpec spec{1.0, 1, std::nullopt};
  const GridFunction f = GridFunction::uniform(-12.0, 12.0, 4001, [](double x) {
    return Complex{std::exp(-0.5 * x * x)};
  });
  const GridFunction hf = apply_hamiltonian(spec, f);
  double worst = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = f.nodes[i];
    const Complex want = (1.0 + kImaginary * x * x * x) * std::exp(-0.5 * x * x);
    worst = std::max(worst, std::abs(hf.values[i] - want));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("real-space application: zero stays zero") {
  const PotentialSpec spec{1.0, 1, std::nullopt};
  const GridFunction f = GridFunction::uniform(-12.0, 12.0, 64, [](double) {
    return Complex{0.0};
  });
  const GridFunction hf = apply_hamiltonian(spec, f);
  for (const Complex& v : hf.values) CHECK(v == Complex{0.0});
}

TEST_CASE("real-space application rejects bad grids") {
  const PotentialSpec spec{1.0, 1, std::nullopt};
  const GridFunction tiny = GridFunction::uniform(-1.0, 1.0, 8, [](double) {
    return Complex{0.0};
  });
  CHECK_THROWS_AS(apply_hamiltonian(spec, tiny), ValidationError);

  // non-negligible boundary values are flagged
  const GridFunction bad = GridFunction::uniform(-2.0, 2.0, 64, [](double x) {
    return Complex{std::exp(-0.5 * x * x)};
  });
  CHECK_THROWS_AS(apply_hamiltonian(spec, bad), ValidationError);
}

TEST_CASE("hermite synthesis and projection round-trip") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<Complex> coeffs(12);
  for (Complex& c : coeffs) c = Complex{dist(rng), dist(rng)};
  const GridFunction f = synthesize_hermite(coeffs, -14.0, 14.0, 4001);
  const std::vector<Complex> back = project_hermite(f, 12);
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    CHECK(std::abs(back[k] - coeffs[k]) < 1e-10);
}

TEST_CASE("potential spec validation") {
  CHECK_THROWS_AS(PotentialSpec(1.0, 0, std::nullopt).validate(), ValidationError);
  CHECK_THROWS_AS(PotentialSpec(1.0, 1, -0.5).validate(), ValidationError);
  CHECK_NOTHROW(PotentialSpec(1.0, 1, 0.5).validate());
}
