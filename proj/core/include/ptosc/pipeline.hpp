#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ptosc/config.hpp"
#include "ptosc/contour.hpp"
#include "ptosc/numerical_range.hpp"
#include "ptosc/resolvent.hpp"
#include "ptosc/scaling.hpp"
#include "ptosc/spectrum.hpp"
#include "ptosc/types.hpp"
#include "ptosc/wkb.hpp"

namespace ptosc {

// Truncation-trust probe: a value is trusted when recomputing at 1.5 N moves
// it by less than 1%, and it sits above the double-precision floor.
struct TrustWindow {
  int probe_nx = 0, probe_ny = 0;
  std::vector<Complex> untrusted_points;
  bool fully_trusted = false;
  // Largest window prefix [re_min, trusted_re_max] whose probe columns are
  // all trusted (the full im range).
  double trusted_re_min = 0.0, trusted_re_max = 0.0;
  double trusted_im_min = 0.0, trusted_im_max = 0.0;
};

struct PseudospectrumResult {
  ResolventGrid grid;
  ContourSet contours;
  std::vector<EigenMode> eigenvalues;
  SandwichReport sandwich;
  TrustWindow trust;
  double lipschitz_excess = 0.0;
  int nesting_violations = 0;
  double total_seconds = 0.0;
};

PseudospectrumResult run_pseudospectrum(const ExperimentConfig& cfg);

struct WkbCertificatePoint {
  double h = 0.0;
  Complex lambda;
  bool refused = false;
  std::string refusal_reason;
  double x0 = 0.0, xi0 = 0.0, R0 = 0.0, C2 = 0.0;
  int series_order = 0;
  double C1_fit = 0.0;
  double residual_algebraic = 0.0;
  std::optional<double> residual_direct;
  double norm = 0.0;
  double norm_over_h_quarter = 0.0;
  double max_transport_residual = 0.0;
  double eikonal_residual = 0.0;
  // physical plane
  double tau = 0.0;
  Complex lambda_phys;
  double epsilon_phys = 0.0;
  double neglected_log_term_fraction = 0.0;  // (2n+1) log tau versus log C / h
  // matrix cross-link (largest h values only)
  int matrix_dim = 0;
  double matrix_smin = 0.0;
  double projected_residual = 0.0;
  double agreement_factor = 0.0;
};

struct WkbCertifyResult {
  std::vector<WkbCertificatePoint> points;
  bool fit_available = false;
  double slope_fit = 0.0;       // of log(residual ratio) against 1/h
  double growth_constant = 0.0; // C = exp(-slope)
  double fit_r2 = 0.0;
  RegionSpec calibrated_region; // A default, B from the certified frontier
  std::vector<std::string> warnings;
};

WkbCertifyResult run_wkb_certify(const ExperimentConfig& cfg);

struct FrontierPoint {
  double abs_lambda = 0.0;
  Complex lambda;
  double smin = 0.0;
  int matrix_dim = 0;
  bool trusted = false;
  std::string reason;  // empty when trusted
};

struct ExponentResult {
  std::vector<FrontierPoint> points;
  std::string model;  // "loglog" (beta != 0) or "distance" (beta = 0)
  double exponent = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  int points_used = 0;
  double target = 0.0;  // 2(2n+1)/(2n+3) inverse for beta != 0, 1.0 for beta = 0
};

ExponentResult run_exponent(const ExperimentConfig& cfg);

struct DiagnosticsResult {
  EigenReport spectrum;
  std::optional<TamenessVerdict> tameness;
  std::string tameness_error;  // set when too few converged modes
  std::vector<SemigroupCurve> semigroup;
  std::vector<double> semigroup_sup_log10;  // sup over t per matrix dimension
};

DiagnosticsResult run_diagnostics(const ExperimentConfig& cfg);

void run_matrix_dump(const ExperimentConfig& cfg);

}  // namespace ptosc
