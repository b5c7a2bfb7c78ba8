#include "ptosc/hermite.hpp"

#include <cmath>

namespace ptosc {

std::vector<double> hermite_function_column(int count, double x) {
  if (count < 1) throw ValidationError("hermite_function_column: count must be >= 1");
  std::vector<double> psi(static_cast<std::size_t>(count));
  const double pi_quarter = std::pow(M_PI, -0.25);
  psi[0] = pi_quarter * std::exp(-0.5 * x * x);
  if (count == 1) return psi;
  psi[1] = std::sqrt(2.0) * x * psi[0];
  for (int k = 1; k + 1 < count; ++k)
    psi[static_cast<std::size_t>(k + 1)] =
        std::sqrt(2.0 / (k + 1)) * x * psi[static_cast<std::size_t>(k)] -
        std::sqrt(static_cast<double>(k) / (k + 1)) * psi[static_cast<std::size_t>(k - 1)];
  return psi;
}

GridFunction synthesize_hermite(std::span<const Complex> coeffs, double lo, double hi,
                                int node_count) {
  const int count = static_cast<int>(coeffs.size());
  if (count < 1) throw ValidationError("synthesize_hermite: empty coefficient vector");
  return GridFunction::uniform(lo, hi, node_count, [&](double x) {
    const std::vector<double> psi = hermite_function_column(count, x);
    Complex acc{0.0};
    for (int k = 0; k < count; ++k) acc += coeffs[static_cast<std::size_t>(k)] * psi[static_cast<std::size_t>(k)];
    return acc;
  });
}

std::vector<Complex> project_hermite(const GridFunction& f, int count) {
  if (count < 1) throw ValidationError("project_hermite: count must be >= 1");
  f.validate();
  std::vector<Complex> coeffs(static_cast<std::size_t>(count), Complex{0.0});
  for (std::size_t i = 0; i < f.size(); ++i) {
    const std::vector<double> psi = hermite_function_column(count, f.nodes[i]);
    const Complex wv = f.quadrature_weights[i] * f.values[i];
    for (int k = 0; k < count; ++k) coeffs[static_cast<std::size_t>(k)] += psi[static_cast<std::size_t>(k)] * wv;
  }
  return coeffs;
}

}  // namespace ptosc
