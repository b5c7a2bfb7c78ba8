#include <algorithm>
#include <cmath>

#include "ptosc/wkb.hpp"

namespace ptosc {

AmplitudeSeries solve_transport(const PhaseFunction& phase, int truncation_order) {
  if (truncation_order < 0) throw ValidationError("solve_transport: order must be >= 0");
  if (phase.grid_count < 9) throw ValidationError("solve_transport: phase has no grid");

  const int count = phase.grid_count;
  const double lo = phase.window_lo(), hi = phase.window_hi();
  const std::vector<double> xs = ChebSeries::lobatto_nodes(count, lo, hi);
  const int mid = (count - 1) / 2;

  const std::vector<Complex> phi_p = phase.phi_prime.sample(xs);
  const std::vector<Complex> phi_pp = phase.phi_second.sample(xs);

  // Continuous branch of sqrt(phi') along the window. phi'(x0) = xi0 < 0 sits
  // on the principal cut; any consistent branch works since the sign cancels
  // between the prefactor and the integrand.
  std::vector<Complex> root(xs.size());
  root[static_cast<std::size_t>(mid)] = std::sqrt(Complex{phase.xi0});
  for (int dir : {+1, -1}) {
    Complex w = root[static_cast<std::size_t>(mid)];
    for (int i = mid + dir; i >= 0 && i < count; i += dir) {
      Complex r = std::sqrt(phi_p[static_cast<std::size_t>(i)]);
      if (std::abs(r - w) > std::abs(r + w)) r = -r;
      root[static_cast<std::size_t>(i)] = r;
      w = r;
    }
  }

  AmplitudeSeries series;
  series.a.reserve(static_cast<std::size_t>(truncation_order) + 1);
  series.sup_norms.reserve(static_cast<std::size_t>(truncation_order) + 1);

  // a_0 = sqrt(phi'(x0)) / sqrt(phi'(x)).
  {
    std::vector<Complex> a0(xs.size());
    const Complex root0 = root[static_cast<std::size_t>(mid)];
    for (std::size_t i = 0; i < xs.size(); ++i) a0[i] = root0 / root[i];
    ChebSeries s = ChebSeries::from_samples(lo, hi, a0);
    s.chop();
    series.a.push_back(std::move(s));
  }

  for (int j = 1; j <= truncation_order; ++j) {
    ChebSeries second = series.a.back().derivative().derivative();
    second.chop();
    const std::vector<Complex> a_pp = second.sample(xs);
    std::vector<Complex> integrand(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i)
      integrand[i] = kImaginary * a_pp[i] / (2.0 * root[i]);
    ChebSeries f = ChebSeries::from_samples(lo, hi, integrand).antiderivative(phase.x0);
    const std::vector<Complex> f_vals = f.sample(xs);
    std::vector<Complex> aj(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) aj[i] = f_vals[i] / root[i];
    ChebSeries s = ChebSeries::from_samples(lo, hi, aj);
    s.chop();
    series.a.push_back(std::move(s));
  }

  // Sup norms, the growth-constant fit, and the transport residual (relative
  // to the local term scale).
  double c1 = 0.0;
  double worst_residual = 0.0;
  for (int j = 0; j < static_cast<int>(series.a.size()); ++j) {
    const std::vector<Complex> aj = series.a[static_cast<std::size_t>(j)].sample(xs);
    double sup = 0.0;
    for (const Complex& z : aj) sup = std::max(sup, std::abs(z));
    series.sup_norms.push_back(sup);
    if (sup > 1e15)
      throw NumericalError("series-blowup",
                           "amplitude a_" + std::to_string(j) + " exceeds 1e15");
    const double jj = j == 0 ? 1.0 : std::pow(static_cast<double>(j), j);
    c1 = std::max(c1, std::pow(sup / jj, 1.0 / (j + 1)));

    const std::vector<Complex> aj_p =
        series.a[static_cast<std::size_t>(j)].derivative().sample(xs);
    std::vector<Complex> rhs(xs.size(), Complex{0.0});
    if (j > 0) {
      ChebSeries second = series.a[static_cast<std::size_t>(j - 1)].derivative().derivative();
      const std::vector<Complex> prev_pp = second.sample(xs);
      for (std::size_t i = 0; i < xs.size(); ++i) rhs[i] = 0.5 * kImaginary * prev_pp[i];
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const Complex lhs = phi_p[i] * aj_p[i] + 0.5 * phi_pp[i] * aj[i];
      const double local_scale = std::abs(phi_p[i] * aj_p[i]) +
                                 std::abs(0.5 * phi_pp[i] * aj[i]) + std::abs(rhs[i]) + 1.0;
      worst_residual = std::max(worst_residual, std::abs(lhs - rhs[i]) / local_scale);
    }
  }
  series.C1_estimate = c1;
  series.max_transport_residual = worst_residual;
  return series;
}

}  // namespace ptosc
