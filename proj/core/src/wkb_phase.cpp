#include <algorithm>
#include <cmath>

#include "ptosc/wkb.hpp"

namespace ptosc {

namespace {

// 16-point Gauss-Legendre rule on [-1, 1].
constexpr int kGaussCount = 16;
constexpr double kGaussNode[kGaussCount] = {
    -0.9894009349916499325961542, -0.9445750230732325760779884,
    -0.8656312023878317438804679, -0.7554044083550030338951012,
    -0.6178762444026437484466718, -0.4580167776572273863424194,
    -0.2816035507792589132304605, -0.0950125098376374401853193,
    0.0950125098376374401853193,  0.2816035507792589132304605,
    0.4580167776572273863424194,  0.6178762444026437484466718,
    0.7554044083550030338951012,  0.8656312023878317438804679,
    0.9445750230732325760779884,  0.9894009349916499325961542};
constexpr double kGaussWeight[kGaussCount] = {
    0.0271524594117540948517806, 0.0622535239386478928628438,
    0.0951585116824927848099251, 0.1246289712555338720524763,
    0.1495959888165767320815017, 0.1691565193950025381893121,
    0.1826034150449235888667637, 0.1894506104550684962853967,
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

// Continuous square root along a path: each step takes the root closer to
// the previous value, which flips the principal branch across its cut.
class BranchTracker {
 public:
  explicit BranchTracker(Complex initial) : w_(initial) {}
  Complex advance(Complex radicand) {
    Complex r = std::sqrt(radicand);
    if (std::abs(r - w_) > std::abs(r + w_)) r = -r;
    w_ = r;
    return r;
  }
  Complex current() const { return w_; }

 private:
  Complex w_;
};

PotentialSpec with_h(const PotentialSpec& spec, double h) {
  if (spec.semiclassical_h && std::abs(*spec.semiclassical_h - h) > 1e-14 * h)
    throw ValidationError("spec.semiclassical_h does not match the requested h");
  PotentialSpec out = spec;
  out.semiclassical_h = h;
  return out;
}

}  // namespace

SymbolPoint solve_turning_point(Complex lambda, double h, const PotentialSpec& spec) {
  spec.validate();
  if (!(h > 0.0)) throw ValidationError("solve_turning_point: h must be positive");
  if (!(spec.beta > 0.0))
    throw ValidationError("solve_turning_point: construction requires beta > 0");
  const PotentialSpec vh = with_h(spec, h);

  if (!(lambda.imag() > 0.0))
    throw NumericalError("degenerate-point",
                         "Im lambda <= 0: no admissible symbol point (Im V' = 0 at x0 or the "
                         "mirror branch)");
  // Im lambda = beta x0^{2n+1}.
  const double x0 = std::pow(lambda.imag() / vh.beta, 1.0 / vh.odd_power());
  const double xi0_sq = lambda.real() - vh.quadratic_coefficient() * x0 * x0;
  if (!(xi0_sq > 0.0))
    throw NumericalError("degenerate-point", "Re lambda - c_h x0^2 <= 0: xi0 would vanish");

  SymbolPoint pt;
  pt.x0 = x0;
  pt.xi0 = -std::sqrt(xi0_sq);  // Im V_h'(x0) > 0 forces the negative root
  pt.lambda = lambda;
  pt.h = h;

  const Polynomial v = vh.potential();
  const Complex check = pt.xi0 * pt.xi0 + v(Complex{pt.x0});
  if (std::abs(check - lambda) > 1e-12 * (1.0 + std::abs(lambda)))
    throw NumericalError("degenerate-point", "symbol identity failed to close");
  return pt;
}

PhaseFunction build_phase(const SymbolPoint& pt, const PotentialSpec& spec,
                          const R0SearchParams& params) {
  return build_phase(pt, with_h(spec, pt.h).potential(), params);
}

PhaseFunction build_phase(const SymbolPoint& pt, const Polynomial& potential,
                          const R0SearchParams& params) {
  if (params.grid_count < 9 || params.grid_count % 2 == 0)
    throw ValidationError("build_phase: grid_count must be odd and >= 9");
  if (!(params.r_max > params.r_min && params.r_min > 0.0))
    throw ValidationError("build_phase: bad radius search range");

  const Polynomial& v = potential;
  const Polynomial vp = v.derivative();
  const Complex lambda = pt.lambda;
  const double abs_xi0 = std::abs(pt.xi0);
  const double sign = pt.xi0 >= 0.0 ? 1.0 : -1.0;
  const double scale = 1.0 + std::abs(lambda);

  // Branch-tracked sqrt(lambda - V) stepped along a real segment.
  auto track_to = [&](double from, Complex w_from, double to) {
    BranchTracker track(w_from);
    const int steps = 8;
    for (int s = 1; s <= steps; ++s) {
      const double y = from + (to - from) * s / steps;
      track.advance(lambda - v(Complex{y}));
    }
    return track.current();
  };

  // Window test on [x0 - R/2, x0 + R/2]: Im phi'' > 0 at every node, via the
  // eikonal identity phi'' = -V' / (2 phi').
  auto window_c2 = [&](double radius, double* c2_out) {
    const double half = 0.5 * radius;
    const std::vector<double> xs =
        ChebSeries::lobatto_nodes(params.grid_count, pt.x0 - half, pt.x0 + half);
    const int mid = (params.grid_count - 1) / 2;
    double min_im = std::numeric_limits<double>::infinity();
    auto visit = [&](double x, Complex w) {
      const Complex phi_p = sign * w;
      const Complex phi_pp = -vp(Complex{x}) / (2.0 * phi_p);
      min_im = std::min(min_im, phi_pp.imag());
    };
    visit(pt.x0, Complex{abs_xi0});
    for (int dir : {+1, -1}) {
      Complex w{abs_xi0};
      for (int i = mid + dir; i >= 0 && i < params.grid_count; i += dir) {
        w = track_to(xs[static_cast<std::size_t>(i - dir)], w, xs[static_cast<std::size_t>(i)]);
        visit(xs[static_cast<std::size_t>(i)], w);
      }
    }
    if (c2_out) *c2_out = min_im > 0.0 ? 1.0 / min_im : 0.0;
    return min_im > 0.0;
  };

  // Disc test: on three concentric circles, |lambda - V| stays away from zero
  // with zero winding (no enclosed branch point), and |phi'| = |lambda - V|^{1/2}
  // stays within the configured band.
  auto disc_ok = [&](double radius) {
    const double lo_bound = abs_xi0 / params.phi_prime_band;
    const double hi_bound = abs_xi0 * params.phi_prime_band;
    for (double frac : {1.0 / 3.0, 2.0 / 3.0, 1.0}) {
      const double rho = radius * frac;
      double winding = 0.0;
      double prev_arg = 0.0;
      for (int k = 0; k <= 64; ++k) {
        const double theta = 2.0 * M_PI * k / 64;
        const Complex z = Complex{pt.x0} + std::polar(rho, theta);
        const Complex g = lambda - v(z);
        const double mag = std::abs(g);
        if (!(mag > 1e-10 * scale)) return false;
        const double root_mag = std::sqrt(mag);
        if (root_mag < lo_bound || root_mag > hi_bound) return false;
        const double arg = std::arg(g);
        if (k > 0) {
          double d = arg - prev_arg;
          while (d > M_PI) d -= 2.0 * M_PI;
          while (d < -M_PI) d += 2.0 * M_PI;
          winding += d;
        }
        prev_arg = arg;
      }
      if (std::abs(winding) > 1e-6) return false;
    }
    return true;
  };

  double chosen = 0.0, c2 = 0.0;
  for (int k = 0; k < params.radius_count; ++k) {
    const double radius =
        params.r_max - (params.r_max - params.r_min) * k / (params.radius_count - 1);
    double c2_cand = 0.0;
    if (disc_ok(radius) && window_c2(radius, &c2_cand)) {
      chosen = radius;
      c2 = c2_cand;
      break;
    }
  }
  if (chosen == 0.0)
    throw NumericalError("no-valid-window",
                         "no admissible analyticity radius: Im phi'' > 0 fails down to r_min");

  PhaseFunction ph;
  ph.x0 = pt.x0;
  ph.xi0 = pt.xi0;
  ph.lambda = lambda;
  ph.h = pt.h;
  ph.R0 = chosen;
  ph.C2 = c2;
  ph.grid_count = params.grid_count;
  ph.v = v;
  ph.v_prime = vp;

  const double half = 0.5 * chosen;
  const std::vector<double> xs =
      ChebSeries::lobatto_nodes(params.grid_count, pt.x0 - half, pt.x0 + half);
  const int mid = (params.grid_count - 1) / 2;

  std::vector<Complex> phi_p(xs.size());
  std::vector<Complex> phi_vals(xs.size());
  phi_p[static_cast<std::size_t>(mid)] = Complex{pt.xi0};
  phi_vals[static_cast<std::size_t>(mid)] = Complex{0.0};

  // Cumulative Gauss-Legendre quadrature of phi' outward from x0. Gauss
  // points are visited from the x0 side of each panel so the branch stays
  // threaded; t in [-1, 1] maps previous node -> current node.
  for (int dir : {+1, -1}) {
    BranchTracker track(Complex{abs_xi0});
    Complex acc{0.0};
    for (int i = mid + dir; i >= 0 && i < params.grid_count; i += dir) {
      const double a = xs[static_cast<std::size_t>(i - dir)];
      const double b = xs[static_cast<std::size_t>(i)];
      const double mid_ab = 0.5 * (a + b), half_ab = 0.5 * (b - a);
      Complex panel{0.0};
      for (int g = 0; g < kGaussCount; ++g) {
        const double y = mid_ab + half_ab * kGaussNode[g];
        panel += kGaussWeight[g] * track.advance(lambda - v(Complex{y}));
      }
      acc += sign * panel * half_ab;
      const Complex w_node = track.advance(lambda - v(Complex{b}));
      phi_p[static_cast<std::size_t>(i)] = sign * w_node;
      phi_vals[static_cast<std::size_t>(i)] = acc;
    }
  }

  std::vector<Complex> phi_pp(xs.size());
  double worst_eikonal = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    phi_pp[i] = -vp(Complex{xs[i]}) / (2.0 * phi_p[i]);
    worst_eikonal =
        std::max(worst_eikonal, std::abs(phi_p[i] * phi_p[i] + v(Complex{xs[i]}) - lambda));
  }

  ph.phi = ChebSeries::from_samples(xs.front(), xs.back(), phi_vals);
  ph.phi_prime = ChebSeries::from_samples(xs.front(), xs.back(), phi_p);
  ph.phi_second = ChebSeries::from_samples(xs.front(), xs.back(), phi_pp);
  ph.phi.chop();
  ph.phi_prime.chop();
  ph.phi_second.chop();
  ph.eikonal_residual = worst_eikonal;
  return ph;
}

}  // namespace ptosc
