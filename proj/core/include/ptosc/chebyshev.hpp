#pragma once

#include <span>
#include <vector>

#include "ptosc/types.hpp"

namespace ptosc {

// Chebyshev expansion sum_k c_k T_k(t) on an interval [lo, hi], with
// t = (2x - lo - hi) / (hi - lo). Built from samples at Chebyshev-Lobatto
// nodes; supports spectral differentiation and antidifferentiation.
class ChebSeries {
 public:
  ChebSeries() = default;
  ChebSeries(double lo, double hi, std::vector<Complex> coeffs);

  // Ascending Lobatto nodes x_j = mid - half*cos(j pi / (count-1)), j = 0..count-1.
  static std::vector<double> lobatto_nodes(int count, double lo, double hi);

  // Interpolant of values given at lobatto_nodes(count, lo, hi).
  static ChebSeries from_samples(double lo, double hi, std::span<const Complex> values);

  Complex operator()(double x) const;  // Clenshaw
  std::vector<Complex> sample(std::span<const double> xs) const;
  std::vector<Complex> sample_lobatto(int count) const;

  ChebSeries derivative() const;
  // Antiderivative F with F(base_point) = 0.
  ChebSeries antiderivative(double base_point) const;

  // Drops trailing coefficients below rel_tol * max |c_k|; keeps noise from
  // accumulating across repeated differentiation.
  ChebSeries& chop(double rel_tol = 1e-14);

  // max |value| over the series' own Lobatto nodes.
  double sup_norm() const;

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  int size() const { return static_cast<int>(c_.size()); }
  const std::vector<Complex>& coeffs() const { return c_; }

 private:
  double lo_ = -1.0, hi_ = 1.0;
  std::vector<Complex> c_;
};

}  // namespace ptosc
