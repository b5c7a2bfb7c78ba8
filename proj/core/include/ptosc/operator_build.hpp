#pragma once

#include "ptosc/banded.hpp"
#include "ptosc/potential.hpp"

namespace ptosc {

// Position operator in the oscillator eigenbasis: real symmetric tridiagonal
// with X_{k,k+1} = sqrt((k+1)/2). The returned matrix has dimension
// dim + padding so that truncated powers reproduce infinite-matrix entries.
BandedComplexMatrix build_position_matrix(int dim, int padding = 0);

// Momentum operator: tridiagonal with P_{k,k+1} = i sqrt((k+1)/2) = -P_{k+1,k}.
BandedComplexMatrix build_momentum_matrix(int dim, int padding = 0);

// Hermite-basis truncation of -d^2/dx^2 + V (or the semiclassical
// -h^2 d^2/dx^2 + V_h). Bandwidth 2n+1, exactly PT-symmetric.
BandedComplexMatrix build_hamiltonian(const PotentialSpec& spec, int dim);

}  // namespace ptosc
