#include "ptosc/scaling.hpp"

#include <algorithm>
#include <cmath>

namespace ptosc {

double tau_to_h(double tau, int n) {
  if (!(tau > 0.0)) throw ValidationError("tau_to_h: tau must be positive");
  if (n < 1) throw ValidationError("tau_to_h: n must be >= 1");
  return std::pow(tau, -0.5 * (2.0 * n + 3.0));
}

double h_to_tau(double h, int n) {
  if (!(h > 0.0)) throw ValidationError("h_to_tau: h must be positive");
  if (n < 1) throw ValidationError("h_to_tau: n must be >= 1");
  return std::pow(h, -2.0 / (2.0 * n + 3.0));
}

ScalingParams ScalingParams::from_tau(double tau, int n) {
  ScalingParams p;
  p.tau = tau;
  p.n = n;
  p.h = tau_to_h(tau, n);
  return p;
}

ScalingParams ScalingParams::from_h(double h, int n) {
  ScalingParams p;
  p.h = h;
  p.n = n;
  p.tau = h_to_tau(h, n);
  return p;
}

double ScalingParams::spectral_factor() const { return std::pow(tau, 2.0 * n + 1.0); }

bool in_lambda_region(Complex lambda, double delta, ArgBound bound) {
  if (!(lambda.real() > 0.0)) return false;
  const double arg = std::abs(std::arg(lambda));
  const double limit =
      bound == ArgBound::Arctan ? std::atan(lambda.real()) - delta : 0.5 * M_PI - delta;
  return arg < limit;
}

bool in_a_delta(Complex lambda, double delta, ArgBound bound) {
  const double mag = std::abs(lambda);
  if (!(mag > 0.0)) return false;
  return in_lambda_region(lambda / mag, delta, bound);
}

UnscaledPseudomode unscale_pseudomode(const WkbPseudomode& mode, const ScalingParams& params) {
  if (std::abs(params.h - mode.h) > 1e-12 * mode.h)
    throw ValidationError("unscale_pseudomode: params.h does not match the mode");

  UnscaledPseudomode out;
  const double factor = params.spectral_factor();
  out.lambda_phys = factor * mode.lambda;

  // (U^{-1} psi)(x) = tau^{-1/2} psi(x / tau): stretch nodes by tau, scale
  // values by tau^{-1/2}; the quadrature weights pick up the Jacobian, so the
  // dilation is unitary on the samples.
  const double tau = params.tau;
  const double amp = 1.0 / std::sqrt(tau);
  std::vector<double> nodes(mode.x.size());
  std::vector<Complex> values(mode.x.size());
  std::vector<double> weights(mode.x.size());
  const double dx = (mode.x.back() - mode.x.front()) / (static_cast<double>(mode.x.size()) - 1.0);
  for (std::size_t i = 0; i < mode.x.size(); ++i) {
    nodes[i] = tau * mode.x[i];
    values[i] = amp * mode.psi[i];
    weights[i] = tau * dx;
  }
  weights.front() *= 0.5;
  weights.back() *= 0.5;
  out.samples = GridFunction(std::move(nodes), std::move(values), std::move(weights));

  // Residual ratios scale by tau^{2n+1}: U is unitary and the operator
  // identity multiplies the defect by the spectral factor.
  if (!(mode.residual_ratio > 0.0))
    throw ValidationError("unscale_pseudomode: mode has no certified residual ratio");
  out.residual_phys = factor * mode.residual_ratio;
  return out;
}

double resolvent_bound_margin(double residual_phys, double h, double growth_constant, int n) {
  if (!(residual_phys > 0.0)) throw ValidationError("resolvent_bound_margin: bad residual");
  if (!(h > 0.0) || !(growth_constant > 0.0))
    throw ValidationError("resolvent_bound_margin: bad parameters");
  const double expo = 2.0 * (2.0 * n + 1.0) / (2.0 * n + 3.0);
  const double rhs = std::pow(h, expo) * std::pow(growth_constant, 1.0 / h);
  return (1.0 / residual_phys) / rhs;
}

bool BoundRegion::contains(Complex lambda) const {
  if (std::abs(lambda) <= std::max(A, radius)) return false;
  return in_lambda_region(lambda, delta, ArgBound::Arctan);
}

std::vector<Complex> BoundRegion::boundary(int samples) const {
  // Angular limit theta(r) solves theta = arctan(r cos theta) - delta.
  auto theta_max = [&](double r) {
    double lo = 0.0, hi = 0.5 * M_PI;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid < std::atan(r * std::cos(mid)) - delta)
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  };

  std::vector<Complex> pts;
  const double r0 = std::max(A, radius);
  const double th = theta_max(r0);
  const int arc = std::max(samples / 2, 8);
  // Inner arc from -theta to +theta, then the two angular edges outward.
  for (int k = 0; k <= arc; ++k)
    pts.push_back(std::polar(r0, -th + 2.0 * th * k / arc));
  const int edge = std::max(samples / 4, 8);
  for (int k = 1; k <= edge; ++k) {
    const double r = r0 * (1.0 + 0.05 * k);
    pts.push_back(std::polar(r, theta_max(r)));
  }
  for (int k = 1; k <= edge; ++k) {
    const double r = r0 * (1.0 + 0.05 * k);
    pts.push_back(std::polar(r, -theta_max(r)));
  }
  return pts;
}

BoundRegion bound_region(const RegionSpec& spec, double epsilon, int n) {
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ValidationError("bound_region: epsilon must be in (0, 1)");
  if (!(spec.delta >= 0.0 && spec.delta < 0.5 * M_PI))
    throw ValidationError("bound_region: delta must be in [0, pi/2)");
  BoundRegion r;
  r.A = spec.A_const;
  r.B = spec.B_const;
  r.delta = spec.delta;
  r.epsilon = epsilon;
  r.n = n;
  r.exponent = 2.0 * (2.0 * n + 1.0) / (2.0 * n + 3.0);
  r.radius = spec.B_const * std::pow(std::log(1.0 / epsilon), r.exponent);
  return r;
}

}  // namespace ptosc
