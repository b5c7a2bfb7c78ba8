#include "ptosc/banded.hpp"

#include <algorithm>
#include <cmath>

namespace ptosc {

BandedComplexMatrix::BandedComplexMatrix(int dim, int bandwidth, std::string basis_tag)
    : dim_(dim), bw_(bandwidth), basis_tag_(std::move(basis_tag)) {
  if (dim < 1) throw ValidationError("BandedComplexMatrix: dim must be >= 1");
  if (bandwidth < 0) throw ValidationError("BandedComplexMatrix: bandwidth must be >= 0");
  d_.assign(static_cast<std::size_t>(2 * bw_ + 1) * static_cast<std::size_t>(dim_), Complex{0.0});
}

Complex& BandedComplexMatrix::at(int row, int col) {
  const int k = col - row;
  if (row < 0 || row >= dim_ || col < 0 || col >= dim_ || k < -bw_ || k > bw_)
    throw ValidationError("BandedComplexMatrix::at: coordinates outside the stored band");
  return d_[index(row, k)];
}

void BandedComplexMatrix::set_diagonal(std::span<const Complex> values) {
  if (static_cast<int>(values.size()) != dim_)
    throw ValidationError("set_diagonal: length mismatch");
  for (int r = 0; r < dim_; ++r) d_[index(r, 0)] = values[r];
}

BandedComplexMatrix BandedComplexMatrix::adjoint() const {
  BandedComplexMatrix out(dim_, bw_, basis_tag_);
  for (int r = 0; r < dim_; ++r)
    for (int k = -bw_; k <= bw_; ++k) {
      const int c = r + k;
      if (c < 0 || c >= dim_) continue;
      out.d_[out.index(c, -k)] = std::conj(d_[index(r, k)]);
    }
  return out;
}

BandedComplexMatrix BandedComplexMatrix::truncated(int new_dim, int new_bandwidth) const {
  if (new_dim < 1 || new_dim > dim_) throw ValidationError("truncated: bad dimension");
  BandedComplexMatrix out(new_dim, new_bandwidth, basis_tag_);
  const int kmax = std::min(bw_, new_bandwidth);
  for (int r = 0; r < new_dim; ++r)
    for (int k = -kmax; k <= kmax; ++k) {
      const int c = r + k;
      if (c < 0 || c >= new_dim) continue;
      out.d_[out.index(r, k)] = d_[index(r, k)];
    }
  return out;
}

void BandedComplexMatrix::add_scaled(const BandedComplexMatrix& other, Complex factor) {
  if (other.dim_ != dim_) throw ValidationError("add_scaled: dimension mismatch");
  if (other.bw_ > bw_) throw ValidationError("add_scaled: other band does not fit");
  for (int r = 0; r < dim_; ++r)
    for (int k = -other.bw_; k <= other.bw_; ++k) {
      const int c = r + k;
      if (c < 0 || c >= dim_) continue;
      d_[index(r, k)] += factor * other.d_[other.index(r, k)];
    }
}

std::vector<Complex> BandedComplexMatrix::apply(std::span<const Complex> v) const {
  if (static_cast<int>(v.size()) != dim_) throw ValidationError("apply: length mismatch");
  std::vector<Complex> y(static_cast<std::size_t>(dim_), Complex{0.0});
  for (int r = 0; r < dim_; ++r) {
    Complex acc{0.0};
    const int lo = std::max(-bw_, -r), hi = std::min(bw_, dim_ - 1 - r);
    for (int k = lo; k <= hi; ++k) acc += d_[index(r, k)] * v[static_cast<std::size_t>(r + k)];
    y[static_cast<std::size_t>(r)] = acc;
  }
  return y;
}

Eigen::MatrixXcd BandedComplexMatrix::dense() const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_, dim_);
  for (int r = 0; r < dim_; ++r) {
    const int lo = std::max(-bw_, -r), hi = std::min(bw_, dim_ - 1 - r);
    for (int k = lo; k <= hi; ++k) m(r, r + k) = d_[index(r, k)];
  }
  return m;
}

Eigen::MatrixXcd BandedComplexMatrix::hermitian_part_dense() const {
  Eigen::MatrixXcd m = dense();
  return 0.5 * (m + m.adjoint());
}

double BandedComplexMatrix::max_pt_symmetry_violation() const {
  // (P conj(A) P)_{jk} = (-1)^{j+k} conj(A_{jk})
  double worst = 0.0;
  for (int r = 0; r < dim_; ++r) {
    const int lo = std::max(-bw_, -r), hi = std::min(bw_, dim_ - 1 - r);
    for (int k = lo; k <= hi; ++k) {
      const Complex a = d_[index(r, k)];
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;  // (-1)^{j+k} depends on offset parity
      worst = std::max(worst, std::abs(sign * std::conj(a) - a));
    }
  }
  return worst;
}

double BandedComplexMatrix::max_abs_entry() const {
  double worst = 0.0;
  for (const Complex& z : d_) worst = std::max(worst, std::abs(z));
  return worst;
}

BandedComplexMatrix multiply(const BandedComplexMatrix& a, const BandedComplexMatrix& b) {
  if (a.dim_ != b.dim_) throw ValidationError("multiply: dimension mismatch");
  const int dim = a.dim_;
  BandedComplexMatrix out(dim, a.bw_ + b.bw_, a.basis_tag_);
  for (int r = 0; r < dim; ++r) {
    for (int k = -out.bw_; k <= out.bw_; ++k) {
      const int c = r + k;
      if (c < 0 || c >= dim) continue;
      Complex acc{0.0};
      const int mlo = std::max({0, r - a.bw_, c - b.bw_});
      const int mhi = std::min({dim - 1, r + a.bw_, c + b.bw_});
      for (int m = mlo; m <= mhi; ++m)
        acc += a.d_[a.index(r, m - r)] * b.d_[b.index(m, c - m)];
      out.d_[out.index(r, k)] = acc;
    }
  }
  return out;
}

BandedComplexMatrix banded_power(const BandedComplexMatrix& m, int exponent) {
  if (exponent < 1) throw ValidationError("banded_power: exponent must be >= 1");
  BandedComplexMatrix acc = m;
  for (int e = 1; e < exponent; ++e) acc = multiply(acc, m);
  return acc;
}

}  // namespace ptosc
