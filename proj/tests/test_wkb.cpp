#include <doctest.h>

#include <cmath>

#include "ptosc/chebyshev.hpp"
#include "ptosc/wkb.hpp"

using namespace ptosc;

namespace {

const PotentialSpec kCubic{1.0, 1, std::nullopt};

PhaseFunction reference_phase(Complex lambda, double h, int grid = 129) {
  const SymbolPoint pt = solve_turning_point(lambda, h, kCubic);
  R0SearchParams params;
  params.grid_count = grid;
  return build_phase(pt, kCubic, params);
}

}  // namespace

TEST_CASE("chebyshev series: interpolation, derivative, antiderivative") {
  // f(x) = exp(x) cos(2x) on [-1.5, 0.5]
  auto f = [](double x) { return Complex{std::exp(x) * std::cos(2.0 * x)}; };
  auto fp = [](double x) {
    return Complex{std::exp(x) * (std::cos(2.0 * x) - 2.0 * std::sin(2.0 * x))};
  };
  const double lo = -1.5, hi = 0.5;
  const std::vector<double> xs = ChebSeries::lobatto_nodes(65, lo, hi);
  std::vector<Complex> vals(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) vals[i] = f(xs[i]);
  const ChebSeries s = ChebSeries::from_samples(lo, hi, vals);

  CHECK(std::abs(s(-0.7) - f(-0.7)) < 1e-13);
  CHECK(std::abs(s(lo) - f(lo)) < 1e-13);

  const ChebSeries d = s.derivative();
  CHECK(std::abs(d(-0.7) - fp(-0.7)) < 1e-11);

  // antiderivative of the derivative recovers f up to f(base)
  const ChebSeries back = d.antiderivative(-0.7);
  CHECK(std::abs(back(-0.7)) < 1e-14);
  CHECK(std::abs((back(0.3) + f(-0.7)) - f(0.3)) < 1e-11);
}

TEST_CASE("turning point: limit of vanishing quadratic coefficient") {
  // c_h -> 0: lambda = 1 + i gives x0 = 1, xi0 = -1.
  const SymbolPoint pt = solve_turning_point(Complex{1.0, 1.0}, 1e-30, kCubic);
  CHECK(pt.x0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pt.xi0 == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("turning point: real lambda is degenerate") {
  CHECK_THROWS_AS(solve_turning_point(Complex{5.0, 0.0}, 0.01, kCubic), NumericalError);
  CHECK_THROWS_AS(solve_turning_point(Complex{2.0, -1.0}, 0.01, kCubic), NumericalError);
}

TEST_CASE("turning point: lambda = 2+i at h = 0.01") {
  const double h = 0.01;
  const SymbolPoint pt = solve_turning_point(Complex{2.0, 1.0}, h, kCubic);
  CHECK(pt.x0 == doctest::Approx(1.0).epsilon(1e-14));
  // xi0 = -sqrt(Re lambda - h^{2/5} x0^2), and the symbol identity closes.
  const double c_h = std::pow(h, 0.4);
  CHECK(pt.xi0 == doctest::Approx(-std::sqrt(2.0 - c_h)).epsilon(1e-14));
  const Complex recon = pt.xi0 * pt.xi0 + c_h * pt.x0 * pt.x0 + kImaginary * std::pow(pt.x0, 3);
  CHECK(std::abs(recon - Complex{2.0, 1.0}) < 1e-13);
}

TEST_CASE("phase: defining conditions and eikonal residual") {
  const double h = 0.01;
  const PhaseFunction ph = reference_phase(Complex{2.0, 1.0}, h);
  CHECK(ph.R0 > 0.05);
  CHECK(std::abs(ph.phi(ph.x0)) < 1e-13);
  CHECK(std::abs(ph.phi_prime(ph.x0) - Complex{ph.xi0}) < 1e-12);
  CHECK(ph.eikonal_residual < 1e-10);

  // Im phi''(x0) = -Im V'(x0) / (2 xi0) = 3 x0^2 / (2 |xi0|).
  const double want = 3.0 / (2.0 * std::sqrt(2.0 - std::pow(h, 0.4)));
  CHECK(ph.phi_second(ph.x0).imag() == doctest::Approx(want).epsilon(1e-10));
  CHECK(ph.C2 > 0.0);

  // Im phi'' > 1/C2 across the window
  const std::vector<double> xs = ChebSeries::lobatto_nodes(257, ph.window_lo(), ph.window_hi());
  for (double x : xs) CHECK(ph.phi_second(x).imag() >= 1.0 / ph.C2 - 1e-12);
}

TEST_CASE("phase: flat potential has no valid window") {
  SymbolPoint pt;
  pt.x0 = 0.0;
  pt.xi0 = -1.0;
  pt.lambda = Complex{1.0, 0.0};
  pt.h = 0.01;
  CHECK_THROWS_AS(build_phase(pt, Polynomial{}), NumericalError);
  try {
    build_phase(pt, Polynomial{});
  } catch (const NumericalError& err) {
    CHECK(err.code() == "no-valid-window");
  }
}

TEST_CASE("transport: constant phase velocity kills all corrections") {
  PhaseFunction flat;
  flat.x0 = 0.0;
  flat.xi0 = -1.0;
  flat.lambda = Complex{1.0, 0.0};
  flat.h = 0.01;
  flat.R0 = 1.0;
  flat.C2 = 1.0;
  flat.grid_count = 65;
  flat.phi = ChebSeries(-0.5, 0.5, {Complex{0.0}, Complex{-0.5}});  // phi = -x
  flat.phi_prime = ChebSeries(-0.5, 0.5, {Complex{-1.0}});
  flat.phi_second = ChebSeries(-0.5, 0.5, {Complex{0.0}});

  const AmplitudeSeries amps = solve_transport(flat, 4);
  REQUIRE(amps.a.size() == 5);
  CHECK(std::abs(amps.a[0](0.2) - Complex{1.0}) < 1e-13);
  for (int j = 1; j <= 4; ++j) CHECK(amps.sup_norms[static_cast<std::size_t>(j)] < 1e-13);
}

TEST_CASE("transport: normalization at the turning point and growth fit") {
  const PhaseFunction ph = reference_phase(Complex{2.0, 1.0}, 0.01);
  const AmplitudeSeries amps = solve_transport(ph, 12);
  REQUIRE(amps.a.size() == 13);

  CHECK(std::abs(amps.a[0](ph.x0) - Complex{1.0}) < 1e-12);
  for (int j = 1; j <= 12; ++j) {
    const double scale = std::max(1.0, amps.sup_norms[static_cast<std::size_t>(j)]);
    CHECK(std::abs(amps.a[static_cast<std::size_t>(j)](ph.x0)) < 1e-10 * scale);
  }
  CHECK(amps.max_transport_residual < 1e-8);
  CHECK(amps.C1_estimate > 0.0);
  CHECK(amps.C1_estimate < 20.0);
  // sup|a_j| <= C1^{j+1} j^j by construction of the estimate
  for (int j = 0; j <= 12; ++j) {
    const double jj = j == 0 ? 1.0 : std::pow(static_cast<double>(j), j);
    CHECK(amps.sup_norms[static_cast<std::size_t>(j)] <=
          std::pow(amps.C1_estimate, j + 1) * jj * (1.0 + 1e-9));
  }
}

TEST_CASE("pseudomode assembly: center value, envelope, norm scale") {
  const double h = 0.02;
  const PhaseFunction ph = reference_phase(Complex{2.0, 1.0}, h);
  const AmplitudeSeries amps = solve_transport(ph, 12);
  const WkbPseudomode mode = assemble_pseudomode(ph, amps, h, 0.5, 8193);

  // psi(x0) = 1: chi = 1, phi(x0) = 0, a_j(x0) = 0 for j >= 1.
  const std::size_t mid = mode.x.size() / 2;
  CHECK(std::abs(mode.x[mid] - ph.x0) < 1e-12);
  CHECK(std::abs(mode.psi[mid] - Complex{1.0}) < 1e-10);

  // support is inside the window and the cutoff kills the ends
  CHECK(mode.psi.front() == Complex{0.0});
  CHECK(mode.psi.back() == Complex{0.0});

  // Gaussian envelope on the plateau
  double sup_a = 0.0;
  for (std::size_t i = 0; i < mode.x.size(); ++i) {
    Complex a{0.0};
    double hj = 1.0;
    for (int j = 0; j <= mode.series_order; ++j) {
      a += hj * amps.a[static_cast<std::size_t>(j)](mode.x[i]);
      hj *= h;
    }
    sup_a = std::max(sup_a, std::abs(a));
  }
  for (std::size_t i = 0; i < mode.x.size(); ++i) {
    const double u = std::abs(mode.x[i] - ph.x0);
    if (u > mode.cutoff.plateau_radius) continue;
    const double envelope = std::exp(-u * u / (2.0 * ph.C2 * h)) * sup_a;
    CHECK(std::abs(mode.psi[i]) <= envelope * (1.0 + 1e-9));
  }

  // norm comparable to the pure-Gaussian estimate
  CHECK(mode.norm / mode.gaussian_norm_estimate > 0.5);
  CHECK(mode.norm / mode.gaussian_norm_estimate < 2.0);
  CHECK(mode.norm_over_h_quarter == doctest::Approx(mode.norm / std::pow(h, 0.25)));
}

TEST_CASE("residual certification: ladder decay, fit, and cross-check") {
  const std::vector<double> ladder{0.05, 0.04, 0.03, 0.025, 0.02};
  std::vector<double> ratios;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    const double h = ladder[i];
    const PhaseFunction ph = reference_phase(Complex{2.0, 1.0}, h);
    const AmplitudeSeries amps = solve_transport(ph, 12);
    WkbPseudomode mode = assemble_pseudomode(ph, amps, h, 0.5, 8192);
    const bool cross = i < 3;
    const ResidualCertificate cert = certify_residual(mode, kCubic, cross);
    ratios.push_back(cert.ratio_algebraic);
    CHECK(mode.residual_ratio == cert.ratio_algebraic);
    if (cross) {
      REQUIRE(cert.ratio_direct.has_value());
      const double f = std::max(cert.ratio_algebraic / *cert.ratio_direct,
                                *cert.ratio_direct / cert.ratio_algebraic);
      CHECK(f <= 3.0);
    }
  }
  for (std::size_t i = 0; i + 1 < ratios.size(); ++i) CHECK(ratios[i + 1] < ratios[i]);
}

TEST_CASE("certification is refused above the threshold h0") {
  const double h = 2.0;
  const PhaseFunction ph = reference_phase(Complex{2.0, 1.0}, h);
  const AmplitudeSeries amps = solve_transport(ph, 6);
  CHECK_THROWS_AS(assemble_pseudomode(ph, amps, h, 0.5, 4096), NumericalError);
  try {
    assemble_pseudomode(ph, amps, h, 0.5, 4096);
  } catch (const NumericalError& err) {
    CHECK(err.code() == "series-not-decreasing");
  }
}

TEST_CASE("cutoff bump: plateau, support, smooth ramps") {
  const CutoffSpec chi{0.0, 0.5, 1.0};
  CHECK(chi.eval(0.0).chi == 1.0);
  CHECK(chi.eval(0.49).chi == 1.0);
  CHECK(chi.eval(0.49).chi_p == 0.0);
  CHECK(chi.eval(1.0).chi == 0.0);
  CHECK(chi.eval(1.5).chi == 0.0);
  const auto mid = chi.eval(0.75);
  CHECK(mid.chi > 0.0);
  CHECK(mid.chi < 1.0);
  CHECK(mid.chi_p < 0.0);  // decreasing on the right ramp

  // derivatives match finite differences on the ramp
  const double d = 1e-6;
  for (double x : {0.6, 0.75, 0.9, -0.8}) {
    const double fd1 = (chi.eval(x + d).chi - chi.eval(x - d).chi) / (2.0 * d);
    const double fd2 =
        (chi.eval(x + d).chi - 2.0 * chi.eval(x).chi + chi.eval(x - d).chi) / (d * d);
    CHECK(chi.eval(x).chi_p == doctest::Approx(fd1).epsilon(1e-6));
    CHECK(chi.eval(x).chi_pp == doctest::Approx(fd2).epsilon(1e-4));
  }
}
