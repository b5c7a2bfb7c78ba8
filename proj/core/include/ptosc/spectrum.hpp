#pragma once

#include <string>
#include <vector>

#include "ptosc/banded.hpp"
#include "ptosc/potential.hpp"
#include "ptosc/types.hpp"

namespace ptosc {

struct EigenMode {
  Complex value;
  double overlap = 0.0;          // |v^* u| for unit left/right eigenvectors
  double projection_norm = 1.0;  // ||P_k|| = 1 / overlap
  bool converged = false;        // stable between the two truncation sizes
  bool defective = false;        // overlap below 1e-12
  double change = 0.0;           // relative eigenvalue movement N -> 1.5N
  double projection_change = 0.0;
};

struct EigenReport {
  std::vector<EigenMode> modes;  // ordered by real part, first k_max entries
  int matrix_dim = 0;
  int comparison_dim = 0;
  int converged_count = 0;
};

// Dense left/right eigendecomposition of the operator truncated at dim and at
// 3*dim/2; modes are matched between the two sizes and flagged converged when
// the eigenvalue is stable to 1e-6 relative. Requires k_max <= dim / 4.
EigenReport compute_spectrum(const PotentialSpec& spec, int dim, int k_max);

// Left/right eigen pairs of one dense matrix (no convergence information);
// ordered by real part.
std::vector<EigenMode> eigen_modes(const Eigen::MatrixXcd& a);

struct TamenessVerdict {
  bool tame = false;
  std::string verdict;       // "tame" or "not tame at this scale"
  double alpha_fit = 0.0;    // exponent of the power-law fit ||P_k|| ~ a k^alpha
  double a_fit = 0.0;
  double r2_polynomial = 0.0;
  double r2_exponential = 0.0;
  int used_modes = 0;
};

// Tests whether the converged projection norms admit a polynomial bound
// a k^alpha with alpha <= alpha_max and a <= a_max, and compares power-law
// versus exponential fits of ||P_k||. Needs >= 6 converged modes.
TamenessVerdict tameness_test(const EigenReport& report, double alpha_max, double a_max);

struct SemigroupCurve {
  std::vector<double> times;
  std::vector<double> norms;        // ||exp(-i t A)||, +inf past 1e300
  std::vector<double> log10_norms;  // always finite
  std::vector<std::uint8_t> overflow;
  int matrix_dim = 0;
};

// ||exp(-i t A)|| on an equispaced time grid (t = 0 included), each point an
// independent scaling-and-squaring evaluation in log scale.
SemigroupCurve semigroup_curve(const BandedComplexMatrix& a, double t_max, int steps,
                               int threads = 0);

}  // namespace ptosc
