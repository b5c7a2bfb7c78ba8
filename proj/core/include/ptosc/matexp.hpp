#pragma once

#include <Eigen/Dense>

namespace ptosc {

// log ||exp(M)||_2 computed by Pade-13 scaling and squaring with per-step
// renormalization, so strongly non-normal growth far beyond 1e308 is still
// reported exactly in log scale.
double log_matrix_exponential_norm(const Eigen::MatrixXcd& m);

}  // namespace ptosc
