#include "ptosc/spectrum.hpp"

#include <algorithm>
#include <cmath>

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include "ptosc/fit.hpp"
#include "ptosc/matexp.hpp"
#include "ptosc/operator_build.hpp"
#include "ptosc/parallel.hpp"

namespace ptosc {

namespace {

struct RawDecomposition {
  std::vector<Complex> values;
  Eigen::MatrixXcd left;   // columns: left eigenvectors (v^* A = lambda v^*)
  Eigen::MatrixXcd right;  // columns: right eigenvectors
};

RawDecomposition zgeev_decompose(Eigen::MatrixXcd a) {
  const int n = static_cast<int>(a.rows());
  RawDecomposition out;
  out.values.resize(static_cast<std::size_t>(n));
  out.left.resize(n, n);
  out.right.resize(n, n);
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'V', 'V', n, reinterpret_cast<lapack_complex_double*>(a.data()), n,
      reinterpret_cast<lapack_complex_double*>(out.values.data()),
      reinterpret_cast<lapack_complex_double*>(out.left.data()), n,
      reinterpret_cast<lapack_complex_double*>(out.right.data()), n);
  if (info != 0) throw NumericalError("lapack", "zgeev failed: " + std::to_string(info));
  return out;
}

std::vector<EigenMode> modes_from_raw(const RawDecomposition& raw) {
  const int n = static_cast<int>(raw.values.size());
  std::vector<EigenMode> modes(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    EigenMode& m = modes[static_cast<std::size_t>(k)];
    m.value = raw.values[static_cast<std::size_t>(k)];
    const Eigen::VectorXcd u = raw.right.col(k).normalized();
    const Eigen::VectorXcd v = raw.left.col(k).normalized();
    m.overlap = std::abs(v.dot(u));  // Eigen::dot conjugates the left factor
    m.defective = m.overlap < 1e-12;
    m.projection_norm = m.defective ? std::numeric_limits<double>::infinity() : 1.0 / m.overlap;
  }
  std::sort(modes.begin(), modes.end(), [](const EigenMode& x, const EigenMode& y) {
    return x.value.real() < y.value.real();
  });
  return modes;
}

}  // namespace

std::vector<EigenMode> eigen_modes(const Eigen::MatrixXcd& a) {
  return modes_from_raw(zgeev_decompose(a));
}

EigenReport compute_spectrum(const PotentialSpec& spec, int dim, int k_max) {
  spec.validate();
  if (k_max < 1) throw ValidationError("compute_spectrum: k_max must be >= 1");
  if (k_max > dim / 4)
    throw ValidationError("compute_spectrum: k_max exceeds the truncation trust bound dim/4");

  const int dim_hi = (3 * dim) / 2;
  const std::vector<EigenMode> lo = eigen_modes(build_hamiltonian(spec, dim).dense());
  const std::vector<EigenMode> hi = eigen_modes(build_hamiltonian(spec, dim_hi).dense());

  EigenReport report;
  report.matrix_dim = dim;
  report.comparison_dim = dim_hi;
  report.modes.assign(lo.begin(), lo.begin() + k_max);

  // Match each retained mode against the refined truncation by eigenvalue
  // proximity.
  for (EigenMode& m : report.modes) {
    double best = std::numeric_limits<double>::infinity();
    const EigenMode* partner = nullptr;
    for (const EigenMode& cand : hi) {
      const double d = std::abs(cand.value - m.value);
      if (d < best) {
        best = d;
        partner = &cand;
      }
    }
    const double scale = 1.0 + std::abs(m.value);
    m.change = best / scale;
    m.projection_change =
        partner ? std::abs(partner->projection_norm - m.projection_norm) /
                      std::max(1.0, m.projection_norm)
                : std::numeric_limits<double>::infinity();
    m.converged = m.change < 1e-6 && !m.defective;
    if (m.converged) ++report.converged_count;
  }
  return report;
}

TamenessVerdict tameness_test(const EigenReport& report, double alpha_max, double a_max) {
  std::vector<double> ks, log_ks, log_norms;
  for (std::size_t k = 0; k < report.modes.size(); ++k) {
    const EigenMode& m = report.modes[k];
    if (!m.converged) continue;
    const double index = static_cast<double>(k) + 1.0;  // 1-based for the log
    ks.push_back(index);
    log_ks.push_back(std::log(index));
    log_norms.push_back(std::log(std::max(m.projection_norm, 1.0)));
  }
  if (ks.size() < 6)
    throw ValidationError("tameness_test: need at least 6 converged projection norms");

  TamenessVerdict verdict;
  verdict.used_modes = static_cast<int>(ks.size());
  const LinearFit poly = linear_fit(log_ks, log_norms);   // log||P|| = log a + alpha log k
  const LinearFit expo = linear_fit(ks, log_norms);       // log||P|| = c + gamma k
  verdict.alpha_fit = poly.slope;
  verdict.a_fit = std::exp(poly.intercept);
  verdict.r2_polynomial = poly.r2;
  verdict.r2_exponential = expo.r2;

  // Tame iff the capped polynomial bound dominates every sample.
  bool bounded = true;
  for (std::size_t i = 0; i < ks.size(); ++i)
    if (std::exp(log_norms[i]) > a_max * std::pow(ks[i], alpha_max) * (1.0 + 1e-9))
      bounded = false;
  verdict.tame = bounded;
  verdict.verdict = bounded ? "tame" : "not tame at this scale";
  return verdict;
}

SemigroupCurve semigroup_curve(const BandedComplexMatrix& a, double t_max, int steps,
                               int threads) {
  if (!(t_max > 0.0)) throw ValidationError("semigroup_curve: t_max must be positive");
  if (steps < 2) throw ValidationError("semigroup_curve: need at least 2 time points");

  SemigroupCurve curve;
  curve.matrix_dim = a.dim();
  curve.times.resize(static_cast<std::size_t>(steps));
  curve.norms.assign(static_cast<std::size_t>(steps), 0.0);
  curve.log10_norms.assign(static_cast<std::size_t>(steps), 0.0);
  curve.overflow.assign(static_cast<std::size_t>(steps), 0);
  for (int i = 0; i < steps; ++i)
    curve.times[static_cast<std::size_t>(i)] = t_max * i / (steps - 1);

  const Eigen::MatrixXcd dense = a.dense();
  constexpr double kOverflowLog10 = 300.0;

  parallel_for(static_cast<std::size_t>(steps), threads, [&](std::size_t i) {
    const double t = curve.times[i];
    if (t == 0.0) {
      curve.norms[i] = 1.0;
      curve.log10_norms[i] = 0.0;
      return;
    }
    const double log_norm = log_matrix_exponential_norm(Complex{0.0, -t} * dense);
    curve.log10_norms[i] = log_norm / std::log(10.0);
    if (curve.log10_norms[i] > kOverflowLog10) {
      curve.norms[i] = std::numeric_limits<double>::infinity();
      curve.overflow[i] = 1;
    } else {
      curve.norms[i] = std::exp(log_norm);
    }
  });
  return curve;
}

}  // namespace ptosc
