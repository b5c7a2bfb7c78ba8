#pragma once

#include <vector>

#include "ptosc/grid_function.hpp"
#include "ptosc/types.hpp"
#include "ptosc/wkb.hpp"

namespace ptosc {

// Exact power-law maps h = tau^{-(2n+3)/2} between the physical operator and
// its semiclassical companion; for n = 1, h = tau^{-5/2}.
double tau_to_h(double tau, int n);
double h_to_tau(double h, int n);

struct ScalingParams {
  double tau = 1.0;
  int n = 1;
  double h = 1.0;

  static ScalingParams from_tau(double tau, int n);
  static ScalingParams from_h(double h, int n);

  // Spectral parameter map lambda_phys = tau^{2n+1} lambda_semiclassical.
  double spectral_factor() const;
};

enum class ArgBound {
  Arctan,  // |arg lambda| < arctan(Re lambda) - delta
  HalfPi,  // |arg lambda| < pi/2 - delta
};

// Membership in the semiclassical pseudospectrum region Lambda (delta = 0) or
// its delta-shrunk variant, evaluated literally on lambda.
bool in_lambda_region(Complex lambda, double delta = 0.0, ArgBound bound = ArgBound::Arctan);

// The A_delta variant: lambda is first normalized to |lambda| = 1.
bool in_a_delta(Complex lambda, double delta, ArgBound bound = ArgBound::Arctan);

struct UnscaledPseudomode {
  Complex lambda_phys;
  GridFunction samples;  // tau^{-1/2} psi(x / tau) on the stretched grid
  double residual_phys;  // residual ratio for the physical operator
};

// Pulls a semiclassical pseudomode back to the physical operator through the
// unitary dilation; the residual ratio picks up the factor tau^{2n+1}.
UnscaledPseudomode unscale_pseudomode(const WkbPseudomode& mode, const ScalingParams& params);

// Margin of the resolvent lower bound 1/residual_phys > h^{2(2n+1)/(2n+3)} C^{1/h}
// (> 1 when the bound holds).
double resolvent_bound_margin(double residual_phys, double h, double growth_constant, int n = 1);

struct RegionSpec {
  double delta = 0.1;
  double A_const = 10.0;
  double B_const = 1.0;
};

// The pseudospectral inclusion region {|lambda| > A, |arg lambda| <
// arctan Re lambda - delta, |lambda| >= B (log 1/eps)^{2(2n+1)/(2n+3)}}.
struct BoundRegion {
  double A = 0.0, B = 0.0, delta = 0.0, epsilon = 0.0;
  int n = 1;
  double exponent = 0.0;
  double radius = 0.0;  // max(A, B (log 1/eps)^exponent)

  bool contains(Complex lambda) const;
  // Polyline tracing the region boundary (arc portion plus the two angular
  // edges), for plotting.
  std::vector<Complex> boundary(int samples = 256) const;
};

BoundRegion bound_region(const RegionSpec& spec, double epsilon, int n = 1);

}  // namespace ptosc
