#pragma once

#include <span>
#include <vector>

#include "ptosc/grid_function.hpp"
#include "ptosc/types.hpp"

namespace ptosc {

// Values psi_0(x) .. psi_{count-1}(x) of the normalized harmonic oscillator
// eigenfunctions, by the stable three-term recurrence
//   psi_{k+1} = sqrt(2/(k+1)) x psi_k - sqrt(k/(k+1)) psi_{k-1}.
std::vector<double> hermite_function_column(int count, double x);

// f(x) = sum_k coeffs[k] psi_k(x) sampled on a uniform grid.
GridFunction synthesize_hermite(std::span<const Complex> coeffs, double lo, double hi,
                                int node_count);

// Quadrature projections <psi_k, f> for k = 0 .. count-1.
std::vector<Complex> project_hermite(const GridFunction& f, int count);

}  // namespace ptosc
