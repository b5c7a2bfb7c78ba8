#include <doctest.h>

#include <cmath>
#include <random>

#include "ptosc/banded_lu.hpp"
#include "ptosc/contour.hpp"
#include "ptosc/numerical_range.hpp"
#include "ptosc/operator_build.hpp"
#include "ptosc/resolvent.hpp"

using namespace ptosc;

namespace {

// Closed-form resolvent norm of the truncated oscillator: the spectrum is
// exactly {1, 3, ..., 2N-1}.
double oscillator_distance(Complex lambda, int dim) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < dim; ++k) best = std::min(best, std::abs(lambda - Complex{2.0 * k + 1.0}));
  return best;
}

BandedComplexMatrix random_banded(int dim, int bw, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  BandedComplexMatrix m(dim, bw);
  for (int r = 0; r < dim; ++r)
    for (int c = std::max(0, r - bw); c <= std::min(dim - 1, r + bw); ++c)
      m.at(r, c) = Complex{dist(rng), dist(rng)};
  return m;
}

}  // namespace

TEST_CASE("banded LU solves against dense LU") {
  const BandedComplexMatrix m = random_banded(40, 3, 7);
  const Complex shift{0.3, -0.2};
  const BandedLU lu(m, shift);
  REQUIRE(!lu.singular());

  Eigen::MatrixXcd dense = m.dense();
  dense.diagonal().array() -= shift;

  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXcd b(40);
  for (int i = 0; i < 40; ++i) b(i) = Complex{dist(rng), dist(rng)};

  std::vector<Complex> x(b.data(), b.data() + 40);
  lu.solve(x);
  const Eigen::VectorXcd want = dense.partialPivLu().solve(b);
  for (int i = 0; i < 40; ++i) CHECK(std::abs(x[static_cast<std::size_t>(i)] - want(i)) < 1e-11);

  std::vector<Complex> y(b.data(), b.data() + 40);
  lu.solve_adjoint(y);
  const Eigen::VectorXcd want_adj = dense.adjoint().partialPivLu().solve(b);
  for (int i = 0; i < 40; ++i)
    CHECK(std::abs(y[static_cast<std::size_t>(i)] - want_adj(i)) < 1e-11);
}

TEST_CASE("resolvent norm: normal case equals reciprocal distance") {
  const BandedComplexMatrix a = build_hamiltonian(PotentialSpec{0.0, 1, std::nullopt}, 100);

  SUBCASE("midpoint between eigenvalues") {
    const ResolventSample s = resolvent_norm(a, Complex{2.0, 0.0});
    CHECK(!s.at_eigenvalue);
    CHECK(s.norm == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("generic points match 1/dist to 1e-10") {
    for (const Complex lambda : {Complex{4.7, 2.3}, Complex{0.2, -1.1}, Complex{17.0, 0.4}}) {
      const ResolventSample s = resolvent_norm(a, lambda);
      CHECK(s.norm == doctest::Approx(1.0 / oscillator_distance(lambda, 100)).epsilon(1e-10));
    }
  }
  SUBCASE("at an eigenvalue the factorization is singular") {
    const ResolventSample s = resolvent_norm(a, Complex{1.0, 0.0});
    CHECK(s.at_eigenvalue);
    CHECK(std::isinf(s.norm));
  }
}

TEST_CASE("resolvent norm agrees with dense SVD off the normal case") {
  const BandedComplexMatrix a = build_hamiltonian(PotentialSpec{1.0, 1, std::nullopt}, 120);
  for (const Complex lambda : {Complex{2.0, 1.0}, Complex{8.0, 3.0}, Complex{5.0, -2.0}}) {
    Eigen::MatrixXcd m = a.dense();
    m.diagonal().array() -= lambda;
    const Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    const double smin = svd.singularValues().minCoeff();
    const ResolventSample s = resolvent_norm(a, lambda);
    CHECK(s.norm == doctest::Approx(1.0 / smin).epsilon(1e-8));
  }
}

TEST_CASE("m-accretivity bound on the open left half plane") {
  const BandedComplexMatrix a = build_hamiltonian(PotentialSpec{1.0, 1, std::nullopt}, 150);
  const ResolventSample s = resolvent_norm(a, Complex{-1.0, 0.0});
  CHECK(s.norm <= 1.0);  // ||(H - lambda)^{-1}|| <= 1/|Re lambda| for Re < 0
}

TEST_CASE("grid sweep: deterministic, Lipschitz, and exact on the normal case") {
  const BandedComplexMatrix a = build_hamiltonian(PotentialSpec{0.0, 1, std::nullopt}, 60);
  const ResolventGrid g1 = sweep_grid(a, {0.0, 9.0}, {-2.0, 2.0}, 19, 9, 1);
  const ResolventGrid g4 = sweep_grid(a, {0.0, 9.0}, {-2.0, 2.0}, 19, 9, 4);

  SUBCASE("bit-identical across thread counts") {
    REQUIRE(g1.values.size() == g4.values.size());
    for (std::size_t i = 0; i < g1.values.size(); ++i) CHECK(g1.values[i] == g4.values[i]);
  }
  SUBCASE("normal-case oracle to 1e-10 relative") {
    for (int iy = 0; iy < g1.ny(); ++iy)
      for (int ix = 0; ix < g1.nx(); ++ix) {
        const double want = 1.0 / oscillator_distance(g1.point(ix, iy), 60);
        if (std::isinf(g1.value(ix, iy))) continue;
        CHECK(g1.value(ix, iy) == doctest::Approx(want).epsilon(1e-10));
      }
  }
  SUBCASE("values positive, Lipschitz holds") {
    for (double v : g1.values) CHECK(v > 0.0);
    CHECK(max_lipschitz_violation(g1) < 1e-8);
  }
  SUBCASE("2x2 grid works") {
    const ResolventGrid tiny = sweep_grid(a, {0.0, 1.0}, {0.5, 1.5}, 2, 2, 1);
    CHECK(tiny.values.size() == 4);
  }
  SUBCASE("grid validation") {
    CHECK_THROWS_AS(sweep_grid(a, {0.0, 1.0}, {0.0, 1.0}, 1, 4, 1), ValidationError);
    CHECK_THROWS_AS(sweep_grid(a, {1.0, 0.0}, {0.0, 1.0}, 4, 4, 1), ValidationError);
  }
}

TEST_CASE("contours: single eigenvalue gives a circle") {
  // 1x1 matrix [2]: resolvent norm is 1/|2-lambda|, the 0.1-contour is the
  // circle of radius 0.1 around 2.
  BandedComplexMatrix a(1, 0);
  a.at(0, 0) = Complex{2.0};
  const ResolventGrid grid = sweep_grid(a, {1.7, 2.3}, {-0.3, 0.3}, 121, 121, 2);
  const double eps = 0.1;
  const ContourSet set = extract_contours(grid, std::vector<double>{eps});
  REQUIRE(set.polylines.size() == 1);
  REQUIRE(set.polylines[0].size() >= 1);

  const double cell = 0.6 / 120.0;
  std::size_t verts = 0;
  for (std::size_t c = 0; c < set.polylines[0].size(); ++c) {
    CHECK(set.closed_flags[0][c] == 1);
    for (const Complex& p : set.polylines[0][c]) {
      CHECK(std::abs(std::abs(p - Complex{2.0}) - eps) < cell);
      ++verts;
    }
  }
  CHECK(verts > 40);
}

TEST_CASE("contours: level below the grid range is empty") {
  BandedComplexMatrix a(1, 0);
  a.at(0, 0) = Complex{2.0};
  const ResolventGrid grid = sweep_grid(a, {1.7, 2.3}, {-0.3, 0.3}, 21, 21, 1);
  const ContourSet set = extract_contours(grid, std::vector<double>{1e-9});
  CHECK(set.polylines[0].empty());
}

TEST_CASE("contours: nesting and well-formedness on the oscillator") {
  const BandedComplexMatrix a = build_hamiltonian(PotentialSpec{0.0, 1, std::nullopt}, 40);
  const ResolventGrid grid = sweep_grid(a, {0.0, 8.0}, {-2.0, 2.0}, 81, 41, 2);
  const std::vector<double> levels{0.05, 0.2, 0.8};
  const ContourSet set = extract_contours(grid, levels);
  CHECK(contours_well_formed(grid, set));
  CHECK(count_nesting_violations(grid, levels) == 0);
}

TEST_CASE("numerical range hull and distances") {
  // diag(0, 2): numerical range is the segment [0, 2].
  BandedComplexMatrix a(2, 0);
  a.at(0, 0) = Complex{0.0};
  a.at(1, 1) = Complex{2.0};
  const std::vector<Complex> hull = convex_hull(numerical_range_samples(a.dense(), 64));
  for (const Complex& p : hull) {
    CHECK(p.real() >= -1e-9);
    CHECK(p.real() <= 2.0 + 1e-9);
    CHECK(std::abs(p.imag()) < 1e-9);
  }
  CHECK(distance_to_hull(Complex{1.0, 1.0}, hull) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(distance_to_hull(Complex{1.0, 0.0}, hull) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("sandwich check: normal case has no violations") {
  const int dim = 40;
  const BandedComplexMatrix a = build_hamiltonian(PotentialSpec{0.0, 1, std::nullopt}, dim);
  const ResolventGrid grid = sweep_grid(a, {0.0, 8.0}, {-2.0, 2.0}, 41, 21, 2);
  std::vector<Complex> eigs;
  for (int k = 0; k < dim; ++k) eigs.push_back(Complex{2.0 * k + 1.0});
  const SandwichReport report = sandwich_check(a, eigs, grid, 0.3);
  CHECK(report.spectrum_inclusion_violations == 0);
  CHECK(report.numerical_range_violations == 0);
}

TEST_CASE("accretive exclusion: left half plane points are outside sigma_eps") {
  const BandedComplexMatrix a = build_hamiltonian(PotentialSpec{1.0, 1, std::nullopt}, 100);
  // Re lambda = -0.5 with eps = 0.2 < |Re lambda|: the resolvent bound keeps
  // lambda out of sigma_eps.
  const ResolventSample s = resolvent_norm(a, Complex{-0.5, 1.0});
  CHECK(s.norm < 1.0 / 0.2);
}
