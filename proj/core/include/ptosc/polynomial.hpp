#pragma once

#include <vector>

#include "ptosc/types.hpp"

namespace ptosc {

// Polynomial with complex coefficients, c[0] + c[1] z + c[2] z^2 + ...
// Default-constructed: the zero polynomial.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(int degree, Complex coeff) {
    std::vector<Complex> c(static_cast<std::size_t>(degree) + 1, Complex{0.0});
    c.back() = coeff;
    return Polynomial(std::move(c));
  }

  Complex operator()(Complex z) const {
    Complex acc{0.0};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return Polynomial{};
    std::vector<Complex> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return Polynomial(std::move(d));
  }

  Polynomial& operator+=(const Polynomial& other) {
    if (other.c_.size() > c_.size()) c_.resize(other.c_.size(), Complex{0.0});
    for (std::size_t k = 0; k < other.c_.size(); ++k) c_[k] += other.c_[k];
    trim();
    return *this;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Complex>& coeffs() const { return c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == Complex{0.0}) c_.pop_back();
  }

  std::vector<Complex> c_;
};

}  // namespace ptosc
