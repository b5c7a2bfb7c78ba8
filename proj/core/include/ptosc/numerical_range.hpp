#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "ptosc/banded.hpp"
#include "ptosc/resolvent.hpp"
#include "ptosc/types.hpp"

namespace ptosc {

// Boundary samples of the numerical range: support points u* A u for the
// extremal eigenvectors u of the rotated Hermitian parts
// (e^{i theta} A + e^{-i theta} A*) / 2 over `angles` equispaced angles.
std::vector<Complex> numerical_range_samples(const Eigen::MatrixXcd& a, int angles = 64);

// Andrew monotone chain; returns hull vertices in counterclockwise order.
std::vector<Complex> convex_hull(std::vector<Complex> points);

// Euclidean distance from p to a convex polygon (0 inside).
double distance_to_hull(Complex p, std::span<const Complex> hull);

struct SandwichReport {
  int checked_points = 0;
  int spectrum_inclusion_violations = 0;       // dist(lambda, spectrum) < eps but not in sigma_eps
  int numerical_range_violations = 0;          // in sigma_eps but dist(lambda, hull) >= eps
  double max_range_distance_excess = 0.0;      // worst dist(lambda, hull) - eps over violations
  std::vector<Complex> hull;
};

// Verifies on every grid point the two-sided pseudospectrum sandwich:
// the eps-neighbourhood of the spectrum is inside sigma_eps, and sigma_eps is
// inside the eps-neighbourhood of the numerical range. Report-only.
SandwichReport sandwich_check(const BandedComplexMatrix& a, std::span<const Complex> eigenvalues,
                              const ResolventGrid& grid, double epsilon);

}  // namespace ptosc
