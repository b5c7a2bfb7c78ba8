#include "ptosc/matexp.hpp"

#include <cmath>

#include "ptosc/types.hpp"

namespace ptosc {

namespace {

// Largest singular value by power iteration on B^* B; the matrices here are
// normalized, so a short iteration reaches 1e-12 relative accuracy.
double spectral_norm(const Eigen::MatrixXcd& b) {
  const int n = static_cast<int>(b.rows());
  Eigen::VectorXcd v = Eigen::VectorXcd::Constant(n, Complex{1.0, 0.5});
  for (int i = 0; i < n; ++i) v(i) *= 1.0 + 0.125 * ((i * 2654435761u) % 17);
  v.normalize();
  double sigma = 0.0;
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXcd w = b.adjoint() * (b * v);
    const double next = std::sqrt(w.norm());
    w.normalize();
    v = w;
    if (it > 2 && std::abs(next - sigma) <= 1e-12 * next) return next;
    sigma = next;
  }
  return sigma;
}

// Pade-13 approximant of exp for ||A||_1 <= theta_13 (Higham's constants).
Eigen::MatrixXcd pade13(const Eigen::MatrixXcd& a) {
  static const double c[14] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                               1187353796428800.0,  129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,       1323241920.0,
                               40840800.0,          960960.0,            16380.0,
                               182.0,               1.0};
  const int n = static_cast<int>(a.rows());
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd a2 = a * a;
  const Eigen::MatrixXcd a4 = a2 * a2;
  const Eigen::MatrixXcd a6 = a4 * a2;
  const Eigen::MatrixXcd u =
      a * (a6 * (c[13] * a6 + c[11] * a4 + c[9] * a2) + c[7] * a6 + c[5] * a4 + c[3] * a2 +
           c[1] * id);
  const Eigen::MatrixXcd v =
      a6 * (c[12] * a6 + c[10] * a4 + c[8] * a2) + c[6] * a6 + c[4] * a4 + c[2] * a2 + c[0] * id;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

double log_matrix_exponential_norm(const Eigen::MatrixXcd& m) {
  constexpr double theta13 = 5.371920351148152;
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > theta13)
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));

  Eigen::MatrixXcd b = pade13(m / std::pow(2.0, squarings));
  double log_scale = 0.0;
  for (int s = 0; s < squarings; ++s) {
    b = b * b;
    const double f = b.norm();  // Frobenius renormalization keeps entries finite
    if (!(f > 0.0) || !std::isfinite(f))
      throw NumericalError("overflow", "matrix exponential squaring degenerated");
    b /= f;
    log_scale += std::log(f);
  }
  return log_scale + std::log(spectral_norm(b));
}

}  // namespace ptosc
