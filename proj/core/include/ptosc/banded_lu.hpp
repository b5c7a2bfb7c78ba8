#pragma once

#include <span>
#include <vector>

#include "ptosc/banded.hpp"
#include "ptosc/types.hpp"

namespace ptosc {

// LU factorization with partial pivoting of A - shift*I for a banded matrix,
// storage and factorization per LAPACK zgbtrf. Solves against the factored
// matrix and against its adjoint.
class BandedLU {
 public:
  BandedLU(const BandedComplexMatrix& a, Complex shift);

  // True when a pivot is exactly zero: the shifted matrix is singular to
  // working precision.
  bool singular() const { return singular_; }

  int dim() const { return dim_; }

  void solve(std::span<Complex> x) const;          // (A - shift) y = x, in place
  void solve_adjoint(std::span<Complex> x) const;  // (A - shift)^* y = x, in place

 private:
  int dim_;
  int kl_, ku_;
  int ldab_;
  std::vector<Complex> ab_;
  std::vector<int> ipiv_;
  bool singular_ = false;
};

}  // namespace ptosc
