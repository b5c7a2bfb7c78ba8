#include "ptosc/grid_function.hpp"

#include <cmath>

namespace ptosc {

GridFunction::GridFunction(std::vector<double> nodes_in, std::vector<Complex> values_in,
                           std::vector<double> weights_in)
    : nodes(std::move(nodes_in)), values(std::move(values_in)),
      quadrature_weights(std::move(weights_in)) {
  validate();
}

void GridFunction::validate() const {
  if (nodes.size() != values.size() || nodes.size() != quadrature_weights.size())
    throw ValidationError("GridFunction: nodes, values and weights must have equal length");
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (!(nodes[i] < nodes[i + 1]))
      throw ValidationError("GridFunction: nodes must be strictly increasing");
  for (double w : quadrature_weights)
    if (!(w > 0.0)) throw ValidationError("GridFunction: weights must be positive");
}

GridFunction GridFunction::uniform(double lo, double hi, int count,
                                   const std::function<Complex(double)>& f) {
  if (count < 2) throw ValidationError("GridFunction::uniform: need at least 2 nodes");
  if (!(lo < hi)) throw ValidationError("GridFunction::uniform: lo must be < hi");
  const double dx = (hi - lo) / (count - 1);
  GridFunction g;
  g.nodes.resize(static_cast<std::size_t>(count));
  g.values.resize(static_cast<std::size_t>(count));
  g.quadrature_weights.assign(static_cast<std::size_t>(count), dx);
  for (int i = 0; i < count; ++i) {
    const double x = lo + i * dx;
    g.nodes[static_cast<std::size_t>(i)] = x;
    g.values[static_cast<std::size_t>(i)] = f(x);
  }
  g.quadrature_weights.front() = 0.5 * dx;
  g.quadrature_weights.back() = 0.5 * dx;
  return g;
}

double GridFunction::spacing() const {
  if (nodes.size() < 2) throw ValidationError("GridFunction: spacing needs >= 2 nodes");
  const double dx = nodes[1] - nodes[0];
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (std::abs(nodes[i + 1] - nodes[i] - dx) > 1e-9 * dx)
      throw ValidationError("GridFunction: grid is not uniform");
  return dx;
}

double GridFunction::norm() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    acc += quadrature_weights[i] * std::norm(values[i]);
  return std::sqrt(acc);
}

Complex inner_product(const GridFunction& f, const GridFunction& g) {
  if (f.size() != g.size()) throw ValidationError("inner_product: size mismatch");
  Complex acc{0.0};
  for (std::size_t i = 0; i < f.size(); ++i)
    acc += f.quadrature_weights[i] * std::conj(f.values[i]) * g.values[i];
  return acc;
}

GridFunction apply_hamiltonian(const PotentialSpec& spec, const GridFunction& f) {
  spec.validate();
  f.validate();
  if (f.size() < 16)
    throw ValidationError("apply_hamiltonian: grid must have at least 16 nodes");
  const double dx = f.spacing();

  double fmax = 0.0;
  for (const Complex& v : f.values) fmax = std::max(fmax, std::abs(v));
  const double edge = std::max(std::abs(f.values.front()), std::abs(f.values.back()));
  if (fmax > 0.0 && edge > 1e-12 * std::max(1.0, fmax))
    throw ValidationError("apply_hamiltonian: boundary values are not negligible");

  // 8th-order centered second derivative.
  static constexpr double kStencil[9] = {-1.0 / 560.0, 8.0 / 315.0, -1.0 / 5.0,
                                         8.0 / 5.0,    -205.0 / 72.0, 8.0 / 5.0,
                                         -1.0 / 5.0,   8.0 / 315.0, -1.0 / 560.0};
  const double c = spec.kinetic_coefficient() / (dx * dx);
  const Polynomial v = spec.potential();

  const int count = static_cast<int>(f.size());
  GridFunction out = f;
  for (int i = 0; i < count; ++i) {
    Complex d2{0.0};
    for (int s = -4; s <= 4; ++s) {
      const int j = i + s;
      if (j < 0 || j >= count) continue;  // zero extension
      d2 += kStencil[s + 4] * f.values[static_cast<std::size_t>(j)];
    }
    const double x = f.nodes[static_cast<std::size_t>(i)];
    out.values[static_cast<std::size_t>(i)] =
        -c * d2 + v(Complex{x}) * f.values[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace ptosc
