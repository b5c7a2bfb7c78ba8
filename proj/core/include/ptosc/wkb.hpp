#pragma once

#include <optional>
#include <vector>

#include "ptosc/chebyshev.hpp"
#include "ptosc/polynomial.hpp"
#include "ptosc/potential.hpp"
#include "ptosc/types.hpp"

namespace ptosc {

// Phase-space point generating lambda: lambda = xi0^2 + V_h(x0) with
// xi0 * Im V_h'(x0) < 0.
struct SymbolPoint {
  double x0 = 0.0;
  double xi0 = 0.0;
  Complex lambda;
  double h = 0.0;
};

// x0 from the imaginary part (odd real root), xi0 the negative square root of
// Re lambda - c_h x0^2. Throws NumericalError("degenerate-point") when the
// construction has no admissible point (Im lambda <= 0, or xi0 would vanish).
SymbolPoint solve_turning_point(Complex lambda, double h, const PotentialSpec& spec);

struct R0SearchParams {
  double r_max = 2.0;
  double r_min = 1e-3;
  int radius_count = 64;        // radii scanned down from r_max
  double phi_prime_band = 10.0; // |phi'| must stay within [|xi0|/band, |xi0|*band]
  int grid_count = 129;         // Chebyshev-Lobatto samples on the window (odd)
};

struct PhaseFunction {
  double x0 = 0.0;
  double xi0 = 0.0;
  Complex lambda;
  double h = 0.0;
  double R0 = 0.0;  // certified disc radius; the window is [x0 - R0/2, x0 + R0/2]
  double C2 = 0.0;  // Im phi'' > 1/C2 on the window
  int grid_count = 0;
  ChebSeries phi, phi_prime, phi_second;
  Polynomial v, v_prime;
  double eikonal_residual = 0.0;  // max |phi'^2 + V - lambda| over the samples

  double window_lo() const { return x0 - 0.5 * R0; }
  double window_hi() const { return x0 + 0.5 * R0; }
};

// phi(x) = sgn(xi0) * int_{x0}^{x} sqrt(lambda - V(y)) dy with the branch
// continued from xi0 at x0; R0 is certified by disc sampling (three circles,
// 64 points) plus the Im phi'' > 0 window test. Throws
// NumericalError("no-valid-window") when no radius passes.
PhaseFunction build_phase(const SymbolPoint& pt, const Polynomial& potential,
                          const R0SearchParams& params = {});
PhaseFunction build_phase(const SymbolPoint& pt, const PotentialSpec& spec,
                          const R0SearchParams& params = {});

struct AmplitudeSeries {
  std::vector<ChebSeries> a;        // a_0 .. a_J on the phase window
  std::vector<double> sup_norms;
  double C1_estimate = 0.0;         // smallest C1 with sup|a_j| <= C1^{j+1} j^j
  double max_transport_residual = 0.0;  // relative, over all orders and samples
};

// a_0 = sqrt(phi'(x0)/phi'(x)); a_j = (1/sqrt(phi')) int_{x0}^{x}
// i a_{j-1}'' / (2 sqrt(phi')), second derivatives by Chebyshev
// differentiation. Throws NumericalError("series-blowup") past 1e15.
AmplitudeSeries solve_transport(const PhaseFunction& phase, int truncation_order);

// Smooth exp(-1/t) plateau bump: 1 on [x0-r, x0+r], 0 outside the support.
struct CutoffSpec {
  double center = 0.0;
  double plateau_radius = 0.0;
  double support_radius = 0.0;

  struct Values { double chi, chi_p, chi_pp; };
  Values eval(double x) const;
};

struct WkbPseudomode {
  PhaseFunction phase;
  AmplitudeSeries amplitudes;
  CutoffSpec cutoff;
  double h = 0.0;
  Complex lambda;
  int series_order = 0;  // highest j included in a(x,h) = sum h^j a_j
  std::vector<double> x;       // uniform samples spanning the support
  std::vector<Complex> psi;
  double norm = 0.0;                  // L2 (trapezoid on the samples)
  double norm_over_h_quarter = 0.0;   // recorded constant in ||psi|| >= c h^{1/4}
  double gaussian_norm_estimate = 0.0;  // (pi h / Im phi''(x0))^{1/4}
  double residual_ratio = 0.0;        // stamped by certify_residual
};

// a(x,h) truncated adaptively at the first non-decreasing term h^j sup|a_j|
// (capped by the fitted (e C1 h)^{-1}); psi = e^{i phi/h} chi a on >= 4096
// uniform nodes. Throws NumericalError("series-not-decreasing") when even the
// first correction fails to decrease (h above the certification threshold).
WkbPseudomode assemble_pseudomode(const PhaseFunction& phase, const AmplitudeSeries& amps,
                                  double h, double plateau_fraction = 0.5,
                                  int sample_count = 8192);

struct ResidualCertificate {
  double ratio_algebraic = 0.0;          // ||(H_h - lambda) psi|| / ||psi||, split form
  std::optional<double> ratio_direct;    // finite-difference cross-check
  double norm = 0.0;
};

// Residual by the algebraic split (interior h^{N+2} a_N'' term plus cutoff
// commutator), optionally cross-validated against the direct real-space
// application; stamps mode.residual_ratio. Throws
// NumericalError("cross-check-failed") when the two disagree by more than a
// factor 3 while both are above 1e-12.
ResidualCertificate certify_residual(WkbPseudomode& mode, const PotentialSpec& spec,
                                     bool direct_cross_check = false);

}  // namespace ptosc
