#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ptosc/potential.hpp"
#include "ptosc/types.hpp"

namespace ptosc {

// Complex function sampled on an ordered real grid with matching positive
// quadrature weights.
struct GridFunction {
  std::vector<double> nodes;
  std::vector<Complex> values;
  std::vector<double> quadrature_weights;

  GridFunction() = default;
  GridFunction(std::vector<double> nodes, std::vector<Complex> values,
               std::vector<double> weights);

  // Uniform grid on [lo, hi] with trapezoid weights.
  static GridFunction uniform(double lo, double hi, int count,
                              const std::function<Complex(double)>& f);

  std::size_t size() const { return nodes.size(); }
  double spacing() const;  // uniform spacing; throws if the grid is not uniform
  double norm() const;     // sqrt(sum w |v|^2)
  void validate() const;
};

// L2 inner product <f, g> = sum w conj(f) g on a shared grid.
Complex inner_product(const GridFunction& f, const GridFunction& g);

// Real-space application of -c d^2/dx^2 + V on a uniform grid using an
// 8th-order centered stencil with zero extension beyond the grid ends.
// Requires at least 16 nodes and negligible boundary values.
GridFunction apply_hamiltonian(const PotentialSpec& spec, const GridFunction& f);

}  // namespace ptosc
