#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "ptosc/types.hpp"

namespace ptosc {

// Square complex matrix stored by diagonals: the entry (r, c) is kept iff
// |r - c| <= bandwidth, everything outside the band is exactly zero.
// basis_tag records which basis the rows refer to ("hermite": row k is the
// k-th harmonic oscillator eigenfunction).
class BandedComplexMatrix {
 public:
  BandedComplexMatrix(int dim, int bandwidth, std::string basis_tag = "hermite");

  int dim() const { return dim_; }
  int bandwidth() const { return bw_; }
  const std::string& basis_tag() const { return basis_tag_; }

  // Zero outside the band; in-band access is O(1).
  Complex operator()(int row, int col) const {
    const int k = col - row;
    if (k < -bw_ || k > bw_) return Complex{0.0};
    return d_[index(row, k)];
  }

  // Mutable in-band reference; throws for out-of-band coordinates.
  Complex& at(int row, int col);

  void set_diagonal(std::span<const Complex> values);

  BandedComplexMatrix adjoint() const;

  // Leading block of the given dimension, band clipped to new_bandwidth.
  BandedComplexMatrix truncated(int new_dim, int new_bandwidth) const;

  // *this += factor * other; other must fit inside this band.
  void add_scaled(const BandedComplexMatrix& other, Complex factor);

  std::vector<Complex> apply(std::span<const Complex> v) const;

  Eigen::MatrixXcd dense() const;
  Eigen::MatrixXcd hermitian_part_dense() const;  // (A + A^*) / 2

  // max_jk |(P conj(A) P - A)_{jk}| with P = diag((-1)^k); zero iff the matrix
  // commutes with the composition of parity and complex conjugation.
  double max_pt_symmetry_violation() const;

  // Largest entry with |row - col| > claimed bandwidth (always 0 by storage);
  // checks the *stored* band for entries that should vanish by parity.
  double max_abs_entry() const;

  friend BandedComplexMatrix multiply(const BandedComplexMatrix& a, const BandedComplexMatrix& b);

 private:
  std::size_t index(int row, int offset) const {
    return static_cast<std::size_t>(offset + bw_) * static_cast<std::size_t>(dim_) +
           static_cast<std::size_t>(row);
  }

  int dim_ = 0;
  int bw_ = 0;
  std::string basis_tag_;
  std::vector<Complex> d_;  // (2 bw + 1) diagonals, each of length dim
};

BandedComplexMatrix multiply(const BandedComplexMatrix& a, const BandedComplexMatrix& b);
BandedComplexMatrix banded_power(const BandedComplexMatrix& m, int exponent);

}  // namespace ptosc
