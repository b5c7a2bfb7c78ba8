#include "ptosc/numerical_range.hpp"

#include <algorithm>
#include <cmath>

namespace ptosc {

std::vector<Complex> numerical_range_samples(const Eigen::MatrixXcd& a, int angles) {
  if (angles < 3) throw ValidationError("numerical_range_samples: need at least 3 angles");
  std::vector<Complex> samples;
  samples.reserve(static_cast<std::size_t>(angles));
  for (int k = 0; k < angles; ++k) {
    const double theta = 2.0 * M_PI * k / angles;
    const Complex rot = std::polar(1.0, theta);
    const Eigen::MatrixXcd h = 0.5 * (rot * a + std::conj(rot) * a.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const Eigen::VectorXcd u = es.eigenvectors().col(a.rows() - 1);  // largest eigenvalue
    samples.push_back((u.adjoint() * (a * u))(0, 0));
  }
  return samples;
}

std::vector<Complex> convex_hull(std::vector<Complex> points) {
  auto less = [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  };
  auto cross = [](Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
  };
  std::sort(points.begin(), points.end(), less);
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::size_t count = points.size();
  if (count < 3) return points;
  std::vector<Complex> hull(2 * count);
  std::size_t k = 0;
  for (std::size_t i = 0; i < count; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= 0.0) --k;
    hull[k++] = points[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = count - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], points[i]) <= 0.0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

double distance_to_hull(Complex p, std::span<const Complex> hull) {
  if (hull.empty()) return std::numeric_limits<double>::infinity();
  if (hull.size() == 1) return std::abs(p - hull[0]);

  auto segment_distance = [&](Complex a, Complex b) {
    const Complex ab = b - a, ap = p - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(ap);
    const double t = std::clamp((ap.real() * ab.real() + ap.imag() * ab.imag()) / len2, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
  };

  bool inside = hull.size() >= 3;
  double dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, j = hull.size() - 1; i < hull.size(); j = i++) {
    dist = std::min(dist, segment_distance(hull[j], hull[i]));
    const double cross = (hull[i].real() - hull[j].real()) * (p.imag() - hull[j].imag()) -
                         (hull[i].imag() - hull[j].imag()) * (p.real() - hull[j].real());
    if (cross < 0.0) inside = false;  // hull is counterclockwise
  }
  return inside ? 0.0 : dist;
}

SandwichReport sandwich_check(const BandedComplexMatrix& a, std::span<const Complex> eigenvalues,
                              const ResolventGrid& grid, double epsilon) {
  if (!(epsilon > 0.0)) throw ValidationError("sandwich_check: epsilon must be positive");
  if (eigenvalues.empty()) throw ValidationError("sandwich_check: eigenvalues required");

  SandwichReport report;
  report.hull = convex_hull(numerical_range_samples(a.dense()));

  for (int iy = 0; iy < grid.ny(); ++iy) {
    for (int ix = 0; ix < grid.nx(); ++ix) {
      ++report.checked_points;
      const Complex lambda = grid.point(ix, iy);
      const double value = grid.value(ix, iy);
      const bool in_sigma_eps = value > 1.0 / epsilon;

      double dist_spectrum = std::numeric_limits<double>::infinity();
      for (const Complex& ev : eigenvalues) dist_spectrum = std::min(dist_spectrum, std::abs(lambda - ev));

      // (i) eps-neighbourhood of the spectrum is inside sigma_eps. A small
      // relative guard keeps grid points essentially on the boundary circle
      // from flapping on roundoff.
      if (dist_spectrum < epsilon * (1.0 - 1e-9) && !in_sigma_eps) {
        const double norm_floor = 1.0 / dist_spectrum;
        if (value < norm_floor * (1.0 - 1e-6)) ++report.spectrum_inclusion_violations;
      }

      // (ii) sigma_eps is inside the eps-neighbourhood of the numerical range.
      if (in_sigma_eps) {
        const double d = distance_to_hull(lambda, report.hull);
        if (d >= epsilon) {
          ++report.numerical_range_violations;
          report.max_range_distance_excess = std::max(report.max_range_distance_excess, d - epsilon);
        }
      }
    }
  }
  return report;
}

}  // namespace ptosc
