#include "ptosc/resolvent.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <chrono>
#include <cmath>

#include "ptosc/banded_lu.hpp"
#include "ptosc/parallel.hpp"

namespace ptosc {

namespace {

// Deterministic pseudo-random start vectors (splitmix64), independent of any
// global state so sweeps are reproducible for every thread count.
std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Eigen::VectorXcd start_vector(int dim, std::uint64_t seed) {
  std::uint64_t state = seed;
  Eigen::VectorXcd v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53 - 0.5;
    const double im = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53 - 0.5;
    v(i) = Complex{re, im};
  }
  v.normalize();
  return v;
}

double dense_smin(const BandedComplexMatrix& a, Complex lambda) {
  Eigen::MatrixXcd m = a.dense();
  m.diagonal().array() -= lambda;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues().minCoeff();
}

}  // namespace

ResolventSample resolvent_norm(const BandedComplexMatrix& a, Complex lambda,
                               const ResolventOptions& options) {
  ResolventSample out;
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
    throw ValidationError("resolvent_norm: lambda must be finite");

  const BandedLU lu(a, lambda);
  if (lu.singular()) {
    out.at_eigenvalue = true;
    out.norm = std::numeric_limits<double>::infinity();
    return out;
  }

  const int dim = a.dim();
  // Block power iteration for the largest eigenvalue mu = s_min^{-2} of
  // B = (A-lambda)^{-1} (A-lambda)^{-*}. Two vectors keep near-degenerate
  // smallest singular values (bisector points of a normal spectrum) from
  // stalling the Rayleigh quotient.
  Eigen::MatrixXcd v(dim, 2);
  v.col(0) = start_vector(dim, 0x243f6a8885a308d3ull);
  v.col(1) = start_vector(dim, 0x13198a2e03707344ull);

  auto apply_b = [&](Eigen::MatrixXcd& cols) {
    for (int c = 0; c < cols.cols(); ++c) {
      std::span<Complex> col(cols.col(c).data(), static_cast<std::size_t>(dim));
      lu.solve_adjoint(col);
      lu.solve(col);
    }
  };

  double mu_prev = 0.0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    out.iterations = it;
    // Orthonormalize the block, then one application of B.
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(v);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(dim, 2);
    Eigen::MatrixXcd bq = q;
    apply_b(bq);
    // Rayleigh quotient matrix (2x2 Hermitian), largest eigenvalue.
    Eigen::Matrix2cd r = q.adjoint() * bq;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(0.5 * (r + r.adjoint()));
    const double mu = es.eigenvalues().maxCoeff();
    v = bq;
    if (!(mu > 0.0) || !std::isfinite(mu)) break;
    if (it > 1 && std::abs(mu - mu_prev) <= options.rel_tol * mu) {
      out.norm = std::sqrt(mu);
      return out;
    }
    mu_prev = mu;
  }

  if (!options.allow_dense_fallback) {
    out.norm = mu_prev > 0.0 ? std::sqrt(mu_prev) : 0.0;
    return out;
  }
  out.dense_fallback = true;
  const double smin = dense_smin(a, lambda);
  if (smin == 0.0) {
    out.at_eigenvalue = true;
    out.norm = std::numeric_limits<double>::infinity();
  } else {
    out.norm = 1.0 / smin;
  }
  return out;
}

ResolventGrid sweep_grid(const BandedComplexMatrix& a, std::pair<double, double> re_range,
                         std::pair<double, double> im_range, int nx, int ny, int threads,
                         const ResolventOptions& options) {
  if (nx < 2 || ny < 2) throw ValidationError("sweep_grid: nx and ny must be >= 2");
  if (!(re_range.first < re_range.second) || !(im_range.first < im_range.second))
    throw ValidationError("sweep_grid: ranges must be ordered");

  ResolventGrid grid;
  grid.matrix_dim = a.dim();
  grid.re_axis.resize(static_cast<std::size_t>(nx));
  grid.im_axis.resize(static_cast<std::size_t>(ny));
  for (int i = 0; i < nx; ++i)
    grid.re_axis[static_cast<std::size_t>(i)] =
        re_range.first + (re_range.second - re_range.first) * i / (nx - 1);
  for (int j = 0; j < ny; ++j)
    grid.im_axis[static_cast<std::size_t>(j)] =
        im_range.first + (im_range.second - im_range.first) * j / (ny - 1);

  const std::size_t total = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
  grid.values.assign(total, 0.0);
  grid.at_eigenvalue.assign(total, 0);

  const auto t0 = std::chrono::steady_clock::now();
  parallel_for(total, threads, [&](std::size_t idx) {
    const int ix = static_cast<int>(idx % static_cast<std::size_t>(nx));
    const int iy = static_cast<int>(idx / static_cast<std::size_t>(nx));
    const ResolventSample s = resolvent_norm(a, grid.point(ix, iy), options);
    grid.values[idx] = s.norm;
    grid.at_eigenvalue[idx] = s.at_eigenvalue ? 1 : 0;
  });
  grid.sweep_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return grid;
}

double max_lipschitz_violation(const ResolventGrid& grid) {
  // s_min(lambda) = 1/value is 1-Lipschitz in lambda.
  double worst = 0.0;
  auto smin = [&](int ix, int iy) {
    const double v = grid.value(ix, iy);
    return std::isinf(v) ? 0.0 : 1.0 / v;
  };
  for (int iy = 0; iy < grid.ny(); ++iy)
    for (int ix = 0; ix < grid.nx(); ++ix) {
      if (ix + 1 < grid.nx()) {
        const double step = grid.re_axis[static_cast<std::size_t>(ix + 1)] -
                            grid.re_axis[static_cast<std::size_t>(ix)];
        worst = std::max(worst, (std::abs(smin(ix, iy) - smin(ix + 1, iy)) - step) / step);
      }
      if (iy + 1 < grid.ny()) {
        const double step = grid.im_axis[static_cast<std::size_t>(iy + 1)] -
                            grid.im_axis[static_cast<std::size_t>(iy)];
        worst = std::max(worst, (std::abs(smin(ix, iy) - smin(ix, iy + 1)) - step) / step);
      }
    }
  return std::max(worst, 0.0);
}

}  // namespace ptosc
