#include "ptosc/chebyshev.hpp"

#include <algorithm>
#include <cmath>

namespace ptosc {

ChebSeries::ChebSeries(double lo, double hi, std::vector<Complex> coeffs)
    : lo_(lo), hi_(hi), c_(std::move(coeffs)) {
  if (!(lo < hi)) throw ValidationError("ChebSeries: lo must be < hi");
  if (c_.empty()) c_.assign(1, Complex{0.0});
}

std::vector<double> ChebSeries::lobatto_nodes(int count, double lo, double hi) {
  if (count < 2) throw ValidationError("lobatto_nodes: count must be >= 2");
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  std::vector<double> xs(static_cast<std::size_t>(count));
  const int n = count - 1;
  for (int j = 0; j <= n; ++j)
    xs[static_cast<std::size_t>(j)] = mid - half * std::cos(M_PI * j / n);
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

ChebSeries ChebSeries::from_samples(double lo, double hi, std::span<const Complex> values) {
  const int count = static_cast<int>(values.size());
  if (count < 2) throw ValidationError("ChebSeries::from_samples: need >= 2 samples");
  const int n = count - 1;
  // values[j] is at t_j = -cos(pi j / n); reindex to the standard descending
  // ordering f_k = f(cos(pi k / n)) for the DCT-I sum.
  std::vector<Complex> coeffs(static_cast<std::size_t>(count), Complex{0.0});
  for (int k = 0; k <= n; ++k) {
    Complex acc{0.0};
    for (int j = 0; j <= n; ++j) {
      const Complex fj = values[static_cast<std::size_t>(n - j)];
      const double w = (j == 0 || j == n) ? 0.5 : 1.0;
      acc += w * fj * std::cos(M_PI * j * k / n);
    }
    const double scale = (k == 0 || k == n) ? 1.0 / n : 2.0 / n;
    coeffs[static_cast<std::size_t>(k)] = scale * acc;
  }
  return ChebSeries(lo, hi, std::move(coeffs));
}

Complex ChebSeries::operator()(double x) const {
  const double t = (2.0 * x - lo_ - hi_) / (hi_ - lo_);
  Complex b1{0.0}, b2{0.0};
  for (std::size_t k = c_.size(); k-- > 1;) {
    const Complex b0 = 2.0 * t * b1 - b2 + c_[k];
    b2 = b1;
    b1 = b0;
  }
  return t * b1 - b2 + c_[0];
}

std::vector<Complex> ChebSeries::sample(std::span<const double> xs) const {
  std::vector<Complex> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = (*this)(xs[i]);
  return out;
}

std::vector<Complex> ChebSeries::sample_lobatto(int count) const {
  const std::vector<double> xs = lobatto_nodes(count, lo_, hi_);
  return sample(xs);
}

ChebSeries ChebSeries::derivative() const {
  const int n = static_cast<int>(c_.size()) - 1;
  std::vector<Complex> b(static_cast<std::size_t>(std::max(n, 1)) + 1, Complex{0.0});
  // b_{k-1} = b_{k+1} + 2 k c_k on [-1, 1], then scale by the chain rule.
  for (int k = n; k >= 1; --k) {
    const Complex upper = (k + 1 <= n - 1) ? b[static_cast<std::size_t>(k + 1)] : Complex{0.0};
    b[static_cast<std::size_t>(k - 1)] = upper + 2.0 * k * c_[static_cast<std::size_t>(k)];
  }
  b[0] *= 0.5;
  b.resize(static_cast<std::size_t>(std::max(n, 1)));
  const double scale = 2.0 / (hi_ - lo_);
  for (Complex& z : b) z *= scale;
  return ChebSeries(lo_, hi_, std::move(b));
}

ChebSeries ChebSeries::antiderivative(double base_point) const {
  const int n = static_cast<int>(c_.size()) - 1;
  std::vector<Complex> a(static_cast<std::size_t>(n) + 2, Complex{0.0});
  auto c = [&](int k) { return (k >= 0 && k <= n) ? c_[static_cast<std::size_t>(k)] : Complex{0.0}; };
  a[1] = c(0) - 0.5 * c(2);
  for (int k = 2; k <= n + 1; ++k)
    a[static_cast<std::size_t>(k)] = (c(k - 1) - c(k + 1)) / (2.0 * k);
  const double scale = 0.5 * (hi_ - lo_);
  for (Complex& z : a) z *= scale;
  ChebSeries out(lo_, hi_, std::move(a));
  out.c_[0] -= out(base_point);
  return out;
}

ChebSeries& ChebSeries::chop(double rel_tol) {
  double top = 0.0;
  for (const Complex& z : c_) top = std::max(top, std::abs(z));
  if (top == 0.0) {
    c_.assign(1, Complex{0.0});
    return *this;
  }
  const double floor = rel_tol * top;
  std::size_t keep = c_.size();
  while (keep > 1 && std::abs(c_[keep - 1]) < floor) --keep;
  c_.resize(keep);
  return *this;
}

double ChebSeries::sup_norm() const {
  const int count = std::max(size() + 1, 8);
  double best = 0.0;
  for (const Complex& v : sample_lobatto(count)) best = std::max(best, std::abs(v));
  return best;
}

}  // namespace ptosc
