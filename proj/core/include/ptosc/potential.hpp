#pragma once

#include <cmath>
#include <optional>

#include "ptosc/polynomial.hpp"
#include "ptosc/types.hpp"

namespace ptosc {

// Parameters of the oscillator family
//
//   V(x)   = x^2 + i beta x^{2n+1},                       (physical form)
//   V_h(x) = h^{(4n-2)/(2n+3)} x^2 + i beta x^{2n+1},     (semiclassical form)
//
// where the semiclassical operator carries the kinetic prefactor h^2.
struct PotentialSpec {
  double beta = 1.0;
  int n = 1;
  std::optional<double> semiclassical_h;

  void validate() const {
    if (n < 1) throw ValidationError("PotentialSpec: n must be a positive integer");
    if (!std::isfinite(beta)) throw ValidationError("PotentialSpec: beta must be finite");
    if (semiclassical_h && !(*semiclassical_h > 0.0 && std::isfinite(*semiclassical_h)))
      throw ValidationError("PotentialSpec: semiclassical_h must be positive");
  }

  bool semiclassical() const { return semiclassical_h.has_value(); }
  int odd_power() const { return 2 * n + 1; }
  int bandwidth() const { return 2 * n + 1; }

  // Coefficient of x^2: 1 in the physical form, h^{(4n-2)/(2n+3)} otherwise.
  double quadratic_coefficient() const {
    if (!semiclassical_h) return 1.0;
    const double expo = (4.0 * n - 2.0) / (2.0 * n + 3.0);
    return std::pow(*semiclassical_h, expo);
  }

  // Prefactor of -d^2/dx^2: 1 or h^2.
  double kinetic_coefficient() const {
    return semiclassical_h ? (*semiclassical_h) * (*semiclassical_h) : 1.0;
  }

  Polynomial potential() const {
    validate();
    Polynomial v = Polynomial::monomial(2, Complex{quadratic_coefficient()});
    v += Polynomial::monomial(odd_power(), Complex{0.0, beta});
    return v;
  }
};

}  // namespace ptosc
