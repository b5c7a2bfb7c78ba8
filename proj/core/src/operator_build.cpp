#include "ptosc/operator_build.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace ptosc {

BandedComplexMatrix build_position_matrix(int dim, int padding) {
  if (dim < 1) throw ValidationError("build_position_matrix: dim must be >= 1");
  if (padding < 0) throw ValidationError("build_position_matrix: padding must be >= 0");
  const int total = dim + padding;
  BandedComplexMatrix x(total, total > 1 ? 1 : 0);
  for (int k = 0; k + 1 < total; ++k) {
    const double v = std::sqrt((k + 1) / 2.0);
    x.at(k, k + 1) = v;
    x.at(k + 1, k) = v;
  }
  return x;
}

BandedComplexMatrix build_momentum_matrix(int dim, int padding) {
  if (dim < 1) throw ValidationError("build_momentum_matrix: dim must be >= 1");
  if (padding < 0) throw ValidationError("build_momentum_matrix: padding must be >= 0");
  const int total = dim + padding;
  BandedComplexMatrix p(total, total > 1 ? 1 : 0);
  for (int k = 0; k + 1 < total; ++k) {
    const double v = std::sqrt((k + 1) / 2.0);
    p.at(k, k + 1) = Complex{0.0, v};
    p.at(k + 1, k) = Complex{0.0, -v};
  }
  return p;
}

BandedComplexMatrix build_hamiltonian(const PotentialSpec& spec, int dim) {
  spec.validate();
  const int bw = spec.bandwidth();
  if (dim < 2 * spec.n + 2)
    throw ValidationError("build_hamiltonian: dim " + std::to_string(dim) +
                          " too small to hold the band (need >= " +
                          std::to_string(2 * spec.n + 2) + ")");

  // Powers are formed at padded dimension and truncated back, so the retained
  // block carries the exact infinite-matrix entries.
  const int padding = spec.odd_power();
  const BandedComplexMatrix x = build_position_matrix(dim, padding);
  const BandedComplexMatrix x_odd = banded_power(x, spec.odd_power()).truncated(dim, bw);

  BandedComplexMatrix a(dim, bw);

  if (!spec.semiclassical()) {
    // A = diag(2k+1) + i beta T_N(X^{2n+1}); the diagonal is exact.
    std::vector<Complex> diag(static_cast<std::size_t>(dim));
    for (int k = 0; k < dim; ++k) diag[static_cast<std::size_t>(k)] = Complex{2.0 * k + 1.0};
    a.set_diagonal(diag);
    a.add_scaled(x_odd, Complex{0.0, spec.beta});
    return a;
  }

  // A_h = h^2 (P† P) + c_h X^2 + i beta X^{2n+1}, every term truncated from
  // its padded product so the h-scaling of each coefficient stays independent.
  const BandedComplexMatrix p = build_momentum_matrix(dim, padding);
  const BandedComplexMatrix kinetic = multiply(p.adjoint(), p).truncated(dim, bw);
  const BandedComplexMatrix x_sq = multiply(x, x).truncated(dim, bw);

  a.add_scaled(kinetic, Complex{spec.kinetic_coefficient()});
  a.add_scaled(x_sq, Complex{spec.quadratic_coefficient()});
  a.add_scaled(x_odd, Complex{0.0, spec.beta});
  return a;
}

}  // namespace ptosc
