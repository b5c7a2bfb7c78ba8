#include "ptosc/banded_lu.hpp"

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

namespace ptosc {

namespace {
lapack_complex_double* lp(Complex* p) { return reinterpret_cast<lapack_complex_double*>(p); }
}  // namespace

BandedLU::BandedLU(const BandedComplexMatrix& a, Complex shift)
    : dim_(a.dim()), kl_(a.bandwidth()), ku_(a.bandwidth()), ldab_(2 * kl_ + ku_ + 1) {
  // Band storage per zgbtrf: AB(kl+ku+row-col, col) = A(row, col), with kl
  // extra rows on top for the pivoting fill-in.
  ab_.assign(static_cast<std::size_t>(ldab_) * static_cast<std::size_t>(dim_), Complex{0.0});
  for (int col = 0; col < dim_; ++col) {
    const int rlo = std::max(0, col - ku_), rhi = std::min(dim_ - 1, col + kl_);
    for (int row = rlo; row <= rhi; ++row) {
      Complex v = a(row, col);
      if (row == col) v -= shift;
      ab_[static_cast<std::size_t>(col) * ldab_ + (kl_ + ku_ + row - col)] = v;
    }
  }
  ipiv_.assign(static_cast<std::size_t>(dim_), 0);
  const lapack_int info = LAPACKE_zgbtrf(LAPACK_COL_MAJOR, dim_, dim_, kl_, ku_, lp(ab_.data()),
                                         ldab_, ipiv_.data());
  if (info < 0) throw NumericalError("lapack", "zgbtrf: illegal argument " + std::to_string(-info));
  singular_ = info > 0;
}

void BandedLU::solve(std::span<Complex> x) const {
  if (singular_) throw NumericalError("at-eigenvalue", "solve on a singular factorization");
  if (static_cast<int>(x.size()) != dim_) throw ValidationError("BandedLU::solve: length mismatch");
  const lapack_int info =
      LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', dim_, kl_, ku_, 1,
                     lp(const_cast<Complex*>(ab_.data())), ldab_, ipiv_.data(), lp(x.data()), dim_);
  if (info != 0) throw NumericalError("lapack", "zgbtrs failed: " + std::to_string(info));
}

void BandedLU::solve_adjoint(std::span<Complex> x) const {
  if (singular_) throw NumericalError("at-eigenvalue", "solve on a singular factorization");
  if (static_cast<int>(x.size()) != dim_) throw ValidationError("BandedLU::solve: length mismatch");
  const lapack_int info =
      LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'C', dim_, kl_, ku_, 1,
                     lp(const_cast<Complex*>(ab_.data())), ldab_, ipiv_.data(), lp(x.data()), dim_);
  if (info != 0) throw NumericalError("lapack", "zgbtrs failed: " + std::to_string(info));
}

}  // namespace ptosc
