#include <algorithm>
#include <cmath>

#include "ptosc/grid_function.hpp"
#include "ptosc/wkb.hpp"

namespace ptosc {

namespace {

// exp(-1/t) with derivatives; identically 0 for t <= 0.
struct Mollifier {
  double u, up, upp;
  explicit Mollifier(double t) {
    if (t <= 0.0) {
      u = up = upp = 0.0;
      return;
    }
    u = std::exp(-1.0 / t);
    up = u / (t * t);
    upp = u * (1.0 - 2.0 * t) / (t * t * t * t);
  }
};

PotentialSpec with_h(const PotentialSpec& spec, double h) {
  if (spec.semiclassical_h && std::abs(*spec.semiclassical_h - h) > 1e-14 * h)
    throw ValidationError("spec.semiclassical_h does not match the pseudomode h");
  PotentialSpec out = spec;
  out.semiclassical_h = h;
  return out;
}

}  // namespace

CutoffSpec::Values CutoffSpec::eval(double x) const {
  const double u = std::abs(x - center);
  if (u <= plateau_radius) return {1.0, 0.0, 0.0};
  if (u >= support_radius) return {0.0, 0.0, 0.0};
  const double ramp = support_radius - plateau_radius;
  const double t = (support_radius - u) / ramp;
  const Mollifier p(t), q(1.0 - t);
  // g(t) = p / (p + q), glued so that all derivatives vanish at both ends.
  const double d = p.u + q.u;
  const double g = p.u / d;
  const double qp = -q.up, qpp = q.upp;  // d/dt of u(1-t)
  const double numer = p.up * q.u - p.u * qp;
  const double gp = numer / (d * d);
  const double gpp = (p.upp * q.u - p.u * qpp) / (d * d) -
                     2.0 * numer * (p.up + qp) / (d * d * d);
  const double dt_dx = (x >= center ? -1.0 : 1.0) / ramp;
  return {g, gp * dt_dx, gpp * dt_dx * dt_dx};
}

WkbPseudomode assemble_pseudomode(const PhaseFunction& phase, const AmplitudeSeries& amps,
                                  double h, double plateau_fraction, int sample_count) {
  if (!(plateau_fraction > 0.0 && plateau_fraction < 1.0))
    throw ValidationError("assemble_pseudomode: plateau_fraction must be in (0, 1)");
  if (sample_count < 4096)
    throw ValidationError("assemble_pseudomode: need at least 4096 samples");
  if (std::abs(h - phase.h) > 1e-14 * h)
    throw ValidationError("assemble_pseudomode: h does not match the phase");
  if (amps.a.empty()) throw ValidationError("assemble_pseudomode: empty amplitude series");

  // Adaptive truncation: include terms while h^j sup|a_j| keeps decreasing,
  // capped by the fitted (e C1 h)^{-1}.
  int order = 0;
  double prev = amps.sup_norms[0];
  for (int j = 1; j < static_cast<int>(amps.a.size()); ++j) {
    const double weighted = std::pow(h, j) * amps.sup_norms[static_cast<std::size_t>(j)];
    if (weighted > prev) break;
    order = j;
    prev = weighted;
  }
  if (order == 0 && amps.a.size() > 1)
    throw NumericalError("series-not-decreasing",
                         "h^1 |a_1| already exceeds |a_0|: h is above the certification "
                         "threshold h0(lambda)");
  if (amps.C1_estimate > 0.0) {
    const int cap = static_cast<int>(std::floor(1.0 / (std::exp(1.0) * amps.C1_estimate * h)));
    order = std::min(order, std::max(cap, 0));
  }

  WkbPseudomode mode;
  mode.phase = phase;
  mode.amplitudes = amps;
  mode.h = h;
  mode.lambda = phase.lambda;
  mode.series_order = order;
  mode.cutoff = CutoffSpec{phase.x0, plateau_fraction * 0.5 * phase.R0, 0.5 * phase.R0};

  const double lo = phase.window_lo(), hi = phase.window_hi();
  mode.x.resize(static_cast<std::size_t>(sample_count));
  mode.psi.resize(static_cast<std::size_t>(sample_count));
  const double dx = (hi - lo) / (sample_count - 1);

  double norm_sq = 0.0;
  for (int i = 0; i < sample_count; ++i) {
    const double x = lo + i * dx;
    Complex a{0.0};
    double hj = 1.0;
    for (int j = 0; j <= order; ++j) {
      a += hj * amps.a[static_cast<std::size_t>(j)](x);
      hj *= h;
    }
    const Complex phi = phase.phi(x);
    const double chi = mode.cutoff.eval(x).chi;
    const Complex psi = std::exp(kImaginary * phi / h) * chi * a;
    mode.x[static_cast<std::size_t>(i)] = x;
    mode.psi[static_cast<std::size_t>(i)] = psi;
    const double w = (i == 0 || i == sample_count - 1) ? 0.5 * dx : dx;
    norm_sq += w * std::norm(psi);
  }
  mode.norm = std::sqrt(norm_sq);
  mode.norm_over_h_quarter = mode.norm / std::pow(h, 0.25);
  const double phi2 = phase.phi_second(phase.x0).imag();
  mode.gaussian_norm_estimate = std::pow(M_PI * h / phi2, 0.25);
  return mode;
}

ResidualCertificate certify_residual(WkbPseudomode& mode, const PotentialSpec& spec,
                                     bool direct_cross_check) {
  const PotentialSpec vh = with_h(spec, mode.h);
  {
    // The phase was built for this potential; guard against mismatched specs.
    const Polynomial v = vh.potential();
    const double x_probe = mode.phase.x0 + 0.25 * mode.phase.R0;
    if (std::abs(v(Complex{x_probe}) - mode.phase.v(Complex{x_probe})) >
        1e-10 * (1.0 + std::abs(mode.phase.lambda)))
      throw ValidationError("certify_residual: spec does not match the mode's potential");
  }

  const PhaseFunction& phase = mode.phase;
  const AmplitudeSeries& amps = mode.amplitudes;
  const int order = mode.series_order;
  const double h = mode.h;

  ChebSeries a_top_second = amps.a[static_cast<std::size_t>(order)].derivative().derivative();
  a_top_second.chop();

  // a and a' for the commutator term.
  std::vector<ChebSeries> a_derivs;
  a_derivs.reserve(static_cast<std::size_t>(order) + 1);
  for (int j = 0; j <= order; ++j)
    a_derivs.push_back(amps.a[static_cast<std::size_t>(j)].derivative());

  const double h_top = std::pow(h, order + 2);
  double resid_sq = 0.0;
  const int count = static_cast<int>(mode.x.size());
  const double dx = mode.x[1] - mode.x[0];
  for (int i = 0; i < count; ++i) {
    const double x = mode.x[static_cast<std::size_t>(i)];
    const CutoffSpec::Values chi = mode.cutoff.eval(x);
    if (chi.chi == 0.0 && chi.chi_p == 0.0 && chi.chi_pp == 0.0) continue;

    Complex a{0.0}, ap{0.0};
    double hj = 1.0;
    for (int j = 0; j <= order; ++j) {
      a += hj * amps.a[static_cast<std::size_t>(j)](x);
      ap += hj * a_derivs[static_cast<std::size_t>(j)](x);
      hj *= h;
    }
    const Complex envelope = std::exp(kImaginary * phase.phi(x) / h);
    const Complex interior = h_top * chi.chi * a_top_second(x);
    const Complex phi_p = phase.phi_prime(x);
    const Complex commutator =
        h * h * (chi.chi_pp * a + 2.0 * chi.chi_p * (ap + kImaginary / h * phi_p * a));
    const Complex r = envelope * (interior + commutator);
    const double w = (i == 0 || i == count - 1) ? 0.5 * dx : dx;
    resid_sq += w * std::norm(r);
  }

  ResidualCertificate cert;
  cert.norm = mode.norm;
  cert.ratio_algebraic = std::sqrt(resid_sq) / mode.norm;
  mode.residual_ratio = cert.ratio_algebraic;

  if (direct_cross_check) {
    std::vector<double> weights(mode.x.size(), dx);
    weights.front() = weights.back() = 0.5 * dx;
    const GridFunction f(mode.x, mode.psi, weights);
    const GridFunction hf = apply_hamiltonian(vh, f);
    double direct_sq = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      direct_sq += f.quadrature_weights[i] * std::norm(hf.values[i] - mode.lambda * f.values[i]);
    cert.ratio_direct = std::sqrt(direct_sq) / mode.norm;
    if (cert.ratio_algebraic > 1e-12 && *cert.ratio_direct > 1e-12) {
      const double factor = std::max(cert.ratio_algebraic / *cert.ratio_direct,
                                     *cert.ratio_direct / cert.ratio_algebraic);
      if (factor > 3.0)
        throw NumericalError("cross-check-failed",
                             "algebraic and direct residuals disagree by a factor " +
                                 std::to_string(factor));
    }
  }
  return cert;
}

}  // namespace ptosc
