#include "ptosc/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <limits>

#include "ptosc/banded_lu.hpp"
#include "ptosc/fit.hpp"
#include "ptosc/hermite.hpp"
#include "ptosc/io.hpp"
#include "ptosc/operator_build.hpp"

namespace ptosc {

namespace {

using nlohmann::json;

namespace fs = std::filesystem;

fs::path prepare_output_dir(const ExperimentConfig& cfg) {
  const fs::path dir(cfg.output_dir);
  fs::create_directories(dir);
  return dir;
}

json config_json(const ExperimentConfig& cfg) {
  return json{{"canonical", cfg.canonical_text()}, {"hash", cfg.content_hash()}};
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open for writing: " + path.string());
  out << j.dump(1) << '\n';
}

double matrix_one_norm(const BandedComplexMatrix& a) {
  double worst = 0.0;
  for (int c = 0; c < a.dim(); ++c) {
    double col = 0.0;
    const int lo = std::max(0, c - a.bandwidth());
    const int hi = std::min(a.dim() - 1, c + a.bandwidth());
    for (int r = lo; r <= hi; ++r) col += std::abs(a(r, c));
    worst = std::max(worst, col);
  }
  return worst;
}

// s_min trusted only above the resolution floor of the factorization.
double precision_floor(const BandedComplexMatrix& a) {
  return 64.0 * std::numeric_limits<double>::epsilon() * matrix_one_norm(a);
}

}  // namespace

PseudospectrumResult run_pseudospectrum(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path dir = prepare_output_dir(cfg);
  const PotentialSpec spec{cfg.beta, cfg.n, std::nullopt};
  const BandedComplexMatrix a = build_hamiltonian(spec, cfg.dim);

  PseudospectrumResult result;
  result.grid = sweep_grid(a, {cfg.re_min, cfg.re_max}, {cfg.im_min, cfg.im_max}, cfg.nx, cfg.ny,
                           cfg.threads);
  result.lipschitz_excess = max_lipschitz_violation(result.grid);
  if (result.lipschitz_excess > 1e-6)
    throw NumericalError("lipschitz-violation",
                         "adjacent s_min values break the 1-Lipschitz bound");

  const std::vector<double> ladder = cfg.epsilon_ladder();
  result.contours = extract_contours(result.grid, ladder);
  if (!contours_well_formed(result.grid, result.contours))
    throw NumericalError("contour-extraction", "malformed polylines");
  result.nesting_violations = count_nesting_violations(result.grid, ladder);

  // Eigenvalue overlay with two-size convergence flags.
  const int eig_dim = cfg.eig_dim > 0 ? cfg.eig_dim : std::min(cfg.dim, 400);
  const EigenReport eig = compute_spectrum(spec, eig_dim, std::max(1, eig_dim / 4));
  result.eigenvalues = eig.modes;

  // The sandwich inclusions are checked against the full spectrum of the
  // sweep matrix itself.
  std::vector<Complex> matrix_eigs;
  for (const EigenMode& m : eigen_modes(a.dense())) matrix_eigs.push_back(m.value);
  result.sandwich = sandwich_check(a, matrix_eigs, result.grid, cfg.sandwich_epsilon);

  // Truncation-trust probe at dim versus 1.5 dim on a coarse sub-grid.
  {
    TrustWindow& tw = result.trust;
    tw.probe_nx = 12;
    tw.probe_ny = 8;
    const BandedComplexMatrix a_hi = build_hamiltonian(spec, (3 * cfg.dim) / 2);
    const double floor_lo = precision_floor(a), floor_hi = precision_floor(a_hi);
    std::vector<std::uint8_t> col_trusted(static_cast<std::size_t>(tw.probe_nx), 1);
    for (int ix = 0; ix < tw.probe_nx; ++ix) {
      const double re = cfg.re_min + (cfg.re_max - cfg.re_min) * ix / (tw.probe_nx - 1);
      for (int iy = 0; iy < tw.probe_ny; ++iy) {
        const double im = cfg.im_min + (cfg.im_max - cfg.im_min) * iy / (tw.probe_ny - 1);
        const Complex lambda{re, im};
        const ResolventSample lo = resolvent_norm(a, lambda);
        const ResolventSample hi = resolvent_norm(a_hi, lambda);
        bool ok = !lo.at_eigenvalue && !hi.at_eigenvalue;
        if (ok) {
          const double s_lo = 1.0 / lo.norm, s_hi = 1.0 / hi.norm;
          ok = std::abs(s_lo - s_hi) <= 0.01 * s_hi && s_lo > floor_lo && s_hi > floor_hi;
        }
        if (!ok) {
          tw.untrusted_points.push_back(lambda);
          col_trusted[static_cast<std::size_t>(ix)] = 0;
        }
      }
    }
    tw.fully_trusted = tw.untrusted_points.empty();
    tw.trusted_re_min = cfg.re_min;
    tw.trusted_im_min = cfg.im_min;
    tw.trusted_im_max = cfg.im_max;
    tw.trusted_re_max = cfg.re_min;
    for (int ix = 0; ix < tw.probe_nx && col_trusted[static_cast<std::size_t>(ix)]; ++ix)
      tw.trusted_re_max = cfg.re_min + (cfg.re_max - cfg.re_min) * ix / (tw.probe_nx - 1);
  }

  result.total_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  write_grid_csv(dir / "grid.csv", result.grid);
  write_contours_json(dir / "contours.json", result.contours);
  write_eigenvalues_csv(dir / "eigenvalues.csv", result.eigenvalues);

  json untrusted = json::array();
  for (const Complex& p : result.trust.untrusted_points)
    untrusted.push_back({p.real(), p.imag()});
  write_json(dir / "report.json",
             json{{"command", "pseudospectrum"},
                  {"config", config_json(cfg)},
                  {"matrix_dim", cfg.dim},
                  {"timing",
                   {{"sweep_seconds", result.grid.sweep_seconds},
                    {"total_seconds", result.total_seconds}}},
                  {"lipschitz_excess", result.lipschitz_excess},
                  {"nesting_violations", result.nesting_violations},
                  {"sandwich",
                   {{"epsilon", cfg.sandwich_epsilon},
                    {"checked_points", result.sandwich.checked_points},
                    {"spectrum_inclusion_violations",
                     result.sandwich.spectrum_inclusion_violations},
                    {"numerical_range_violations", result.sandwich.numerical_range_violations}}},
                  {"trust",
                   {{"probe_nx", result.trust.probe_nx},
                    {"probe_ny", result.trust.probe_ny},
                    {"fully_trusted", result.trust.fully_trusted},
                    {"untrusted_points", untrusted},
                    {"trusted_sub_window",
                     {{"re_min", result.trust.trusted_re_min},
                      {"re_max", result.trust.trusted_re_max},
                      {"im_min", result.trust.trusted_im_min},
                      {"im_max", result.trust.trusted_im_max}}}}},
                  {"files", {"grid.csv", "contours.json", "eigenvalues.csv"}}});
  return result;
}

WkbCertifyResult run_wkb_certify(const ExperimentConfig& cfg) {
  cfg.validate();
  const fs::path dir = prepare_output_dir(cfg);
  const PotentialSpec spec{cfg.beta, cfg.n, std::nullopt};
  if (!in_lambda_region(cfg.lambda0, 0.0))
    throw ValidationError("wkb-certify: lambda0 is outside the semiclassical region Lambda");

  std::vector<double> ladder = cfg.h_ladder;
  std::sort(ladder.begin(), ladder.end(), std::greater<>());

  WkbCertifyResult result;
  const int cross_checks = 3;  // direct residual at the largest h values

  R0SearchParams phase_params;
  phase_params.grid_count = cfg.cheb_grid;

  int built = 0;
  for (double h : ladder) {
    WkbCertificatePoint point;
    point.h = h;
    point.lambda = cfg.lambda0;
    try {
      const SymbolPoint pt = solve_turning_point(cfg.lambda0, h, spec);
      const PhaseFunction phase = build_phase(pt, spec, phase_params);
      const AmplitudeSeries amps = solve_transport(phase, cfg.truncation_order);
      WkbPseudomode mode =
          assemble_pseudomode(phase, amps, h, cfg.plateau_fraction, cfg.samples);
      const bool with_direct = built < cross_checks;
      const ResidualCertificate cert = certify_residual(mode, spec, with_direct);
      ++built;

      point.x0 = pt.x0;
      point.xi0 = pt.xi0;
      point.R0 = phase.R0;
      point.C2 = phase.C2;
      point.series_order = mode.series_order;
      point.C1_fit = amps.C1_estimate;
      point.residual_algebraic = cert.ratio_algebraic;
      point.residual_direct = cert.ratio_direct;
      point.norm = cert.norm;
      point.norm_over_h_quarter = mode.norm_over_h_quarter;
      point.max_transport_residual = amps.max_transport_residual;
      point.eikonal_residual = phase.eikonal_residual;

      const ScalingParams scaling = ScalingParams::from_h(h, cfg.n);
      const UnscaledPseudomode unscaled = unscale_pseudomode(mode, scaling);
      point.tau = scaling.tau;
      point.lambda_phys = unscaled.lambda_phys;
      point.epsilon_phys = unscaled.residual_phys;
      const double growth_term = -std::log(cert.ratio_algebraic);
      point.neglected_log_term_fraction =
          growth_term > 0.0 ? (2.0 * cfg.n + 1.0) * std::log(scaling.tau) / growth_term : 0.0;

      if (with_direct) {
        // Feed the physical-plane pseudomode back into the matrix world.
        const double xbar = scaling.tau * pt.x0;
        const double kbar = std::abs(pt.xi0) / (scaling.tau * h);
        const int need = static_cast<int>(0.75 * (xbar * xbar + kbar * kbar)) + 96;
        const int matrix_dim = std::min(cfg.dim_cap, need);
        const BandedComplexMatrix a = build_hamiltonian(spec, matrix_dim);
        std::vector<Complex> coeffs = project_hermite(unscaled.samples, matrix_dim);
        const std::vector<Complex> av = a.apply(coeffs);
        double num = 0.0, den = 0.0;
        for (int k = 0; k < matrix_dim; ++k) {
          num += std::norm(av[static_cast<std::size_t>(k)] -
                           unscaled.lambda_phys * coeffs[static_cast<std::size_t>(k)]);
          den += std::norm(coeffs[static_cast<std::size_t>(k)]);
        }
        point.matrix_dim = matrix_dim;
        point.projected_residual = std::sqrt(num / den);
        const ResolventSample rs = resolvent_norm(a, unscaled.lambda_phys);
        point.matrix_smin = rs.at_eigenvalue ? 0.0 : 1.0 / rs.norm;
        point.agreement_factor =
            point.matrix_smin > 0.0 ? point.projected_residual / point.matrix_smin : 0.0;
      }

      char name[64];
      std::snprintf(name, sizeof(name), "pseudomode_h%g.csv", h);
      write_pseudomode_csv(dir / name, mode.x, mode.psi);
    } catch (const NumericalError& err) {
      if (std::string(err.code()) == "series-not-decreasing") {
        point.refused = true;
        point.refusal_reason = err.what();
        result.warnings.push_back("h = " + format_double(h) + ": certification refused (" +
                                  err.code() + ")");
      } else {
        throw;
      }
    }
    result.points.push_back(std::move(point));
  }

  // Decay fit over the certified points.
  std::vector<double> inv_h, log_ratio;
  for (const WkbCertificatePoint& p : result.points) {
    if (p.refused) continue;
    inv_h.push_back(1.0 / p.h);
    log_ratio.push_back(std::log(p.residual_algebraic));
  }
  if (inv_h.size() >= 3) {
    const LinearFit fit = linear_fit(inv_h, log_ratio);
    result.fit_available = true;
    result.slope_fit = fit.slope;
    result.growth_constant = std::exp(-fit.slope);
    result.fit_r2 = fit.r2;
  } else {
    result.warnings.push_back("decay fit skipped: needs at least 3 certified h values");
  }

  // Calibrate the inclusion-region constant B from the certified frontier.
  result.calibrated_region.delta = cfg.delta;
  result.calibrated_region.A_const = 10.0;
  const double expo = 2.0 * (2.0 * cfg.n + 1.0) / (2.0 * cfg.n + 3.0);
  double b_min = std::numeric_limits<double>::infinity();
  double eps_min = 1.0;
  for (const WkbCertificatePoint& p : result.points) {
    if (p.refused || !(p.epsilon_phys > 0.0) || p.epsilon_phys >= 1.0) continue;
    const double log_inv = std::log(1.0 / p.epsilon_phys);
    b_min = std::min(b_min, std::abs(p.lambda_phys) / std::pow(log_inv, expo));
    eps_min = std::min(eps_min, p.epsilon_phys);
  }
  if (std::isfinite(b_min)) {
    result.calibrated_region.B_const = 0.95 * b_min;
    const BoundRegion region = bound_region(result.calibrated_region, eps_min, cfg.n);
    write_json(dir / "region.json", json{{"A", region.A},
                                         {"B", region.B},
                                         {"delta", region.delta},
                                         {"epsilon", region.epsilon},
                                         {"exponent", region.exponent}});
  }

  json points = json::array();
  for (const WkbCertificatePoint& p : result.points) {
    json jp{{"lambda", {p.lambda.real(), p.lambda.imag()}},
            {"h", p.h},
            {"refused", p.refused}};
    if (p.refused) {
      jp["reason"] = p.refusal_reason;
    } else {
      jp["x0"] = p.x0;
      jp["xi0"] = p.xi0;
      jp["R0"] = p.R0;
      jp["C2"] = p.C2;
      jp["N_trunc"] = p.series_order;
      jp["C1_fit"] = p.C1_fit;
      jp["residual_algebraic"] = p.residual_algebraic;
      if (p.residual_direct)
        jp["residual_direct"] = *p.residual_direct;
      else
        jp["residual_direct"] = nullptr;
      jp["norm"] = p.norm;
      jp["norm_over_h_quarter"] = p.norm_over_h_quarter;
      jp["eikonal_residual"] = p.eikonal_residual;
      jp["max_transport_residual"] = p.max_transport_residual;
      jp["tau"] = p.tau;
      jp["lambda_phys"] = {p.lambda_phys.real(), p.lambda_phys.imag()};
      jp["epsilon_phys"] = p.epsilon_phys;
      jp["neglected_log_term_fraction"] = p.neglected_log_term_fraction;
      if (p.matrix_dim > 0) {
        jp["matrix_dim"] = p.matrix_dim;
        jp["matrix_smin"] = p.matrix_smin;
        jp["projected_residual"] = p.projected_residual;
        jp["matrix_agreement_factor"] = p.agreement_factor;
      }
    }
    points.push_back(std::move(jp));
  }
  write_json(dir / "certificate.json",
             json{{"command", "wkb-certify"},
                  {"config", config_json(cfg)},
                  {"points", std::move(points)},
                  {"slope_fit", result.fit_available ? json(result.slope_fit) : json(nullptr)},
                  {"fit",
                   {{"available", result.fit_available},
                    {"slope", result.slope_fit},
                    {"growth_constant", result.growth_constant},
                    {"r2", result.fit_r2}}},
                  {"region",
                   {{"A", result.calibrated_region.A_const},
                    {"B", result.calibrated_region.B_const},
                    {"delta", result.calibrated_region.delta}}},
                  {"warnings", result.warnings}});
  return result;
}

ExponentResult run_exponent(const ExperimentConfig& cfg) {
  cfg.validate();
  const fs::path dir = prepare_output_dir(cfg);
  const PotentialSpec spec{cfg.beta, cfg.n, std::nullopt};

  if (!in_lambda_region(std::polar(cfg.abs_min, cfg.theta), 0.0))
    throw ValidationError("exponent: the ray leaves the region Lambda at abs_min");

  ExponentResult result;
  result.model = cfg.beta != 0.0 ? "loglog" : "distance";
  result.target = cfg.beta != 0.0 ? (2.0 * cfg.n + 3.0) / (2.0 * (2.0 * cfg.n + 1.0)) : 1.0;

  int dim = std::max(128, 2 * cfg.n + 2);
  BandedComplexMatrix a = build_hamiltonian(spec, dim);
  double floor_a = precision_floor(a);

  for (int i = 0; i < cfg.ray_points; ++i) {
    const double rho =
        cfg.abs_min * std::pow(cfg.abs_max / cfg.abs_min,
                               static_cast<double>(i) / (cfg.ray_points - 1));
    const Complex lambda = std::polar(rho, cfg.theta);

    FrontierPoint point;
    point.abs_lambda = rho;
    point.lambda = lambda;

    // Escalate the truncation until two sizes agree to 1%.
    for (;;) {
      const int dim_hi = std::min((3 * dim) / 2, cfg.dim_cap);
      if (dim_hi <= dim) {
        point.reason = "dim-cap";
        break;
      }
      const BandedComplexMatrix a_hi = build_hamiltonian(spec, dim_hi);
      const double floor_hi = precision_floor(a_hi);
      const ResolventSample lo_s = resolvent_norm(a, lambda);
      const ResolventSample hi_s = resolvent_norm(a_hi, lambda);
      if (lo_s.at_eigenvalue || hi_s.at_eigenvalue) {
        point.reason = "at-eigenvalue";
        break;
      }
      const double s_lo = 1.0 / lo_s.norm, s_hi = 1.0 / hi_s.norm;
      if (s_hi <= floor_hi) {
        point.smin = s_hi;
        point.matrix_dim = dim_hi;
        point.reason = "precision-floor";
        break;
      }
      if (std::abs(s_lo - s_hi) <= 0.01 * s_hi && s_lo > floor_a) {
        point.smin = s_hi;
        point.matrix_dim = dim_hi;
        point.trusted = true;
        break;
      }
      dim = dim_hi;
      a = a_hi;
      floor_a = floor_hi;
    }
    if (point.trusted && cfg.beta != 0.0 && point.smin >= 0.99) {
      point.trusted = false;
      point.reason = "epsilon-above-one";
    }
    result.points.push_back(std::move(point));
  }

  std::vector<double> xs, ys;
  for (const FrontierPoint& p : result.points) {
    if (!p.trusted) continue;
    if (cfg.beta != 0.0) {
      xs.push_back(std::log(p.abs_lambda));
      ys.push_back(std::log(std::log(1.0 / p.smin)));
    } else {
      xs.push_back(std::log(p.abs_lambda));
      ys.push_back(std::log(p.smin));
    }
  }
  if (xs.size() >= 3) {
    const LinearFit fit = linear_fit(xs, ys);
    result.exponent = fit.slope;
    result.intercept = fit.intercept;
    result.r2 = fit.r2;
    result.points_used = static_cast<int>(xs.size());
  } else {
    throw NumericalError("untrusted-point",
                         "fewer than 3 trusted frontier points; cannot fit the exponent");
  }

  {
    std::ofstream out(dir / "frontier.csv");
    if (!out) throw ValidationError("cannot open frontier.csv");
    out << "abs_lambda,re,im,smin,matrix_dim,trusted,reason\n";
    for (const FrontierPoint& p : result.points)
      out << format_double(p.abs_lambda) << ',' << format_double(p.lambda.real()) << ','
          << format_double(p.lambda.imag()) << ',' << format_double(p.smin) << ','
          << p.matrix_dim << ',' << (p.trusted ? 1 : 0) << ',' << p.reason << '\n';
  }
  write_json(dir / "fit.json", json{{"command", "exponent"},
                                    {"config", config_json(cfg)},
                                    {"model", result.model},
                                    {"theta", cfg.theta},
                                    {"beta", cfg.beta},
                                    {"exponent", result.exponent},
                                    {"intercept", result.intercept},
                                    {"r2", result.r2},
                                    {"points_used", result.points_used},
                                    {"target", result.target}});
  return result;
}

DiagnosticsResult run_diagnostics(const ExperimentConfig& cfg) {
  cfg.validate();
  const fs::path dir = prepare_output_dir(cfg);
  const PotentialSpec spec{cfg.beta, cfg.n, std::nullopt};

  DiagnosticsResult result;
  const int k_max = std::min(cfg.k_max, cfg.diag_dim / 4);
  const bool k_max_clipped = k_max != cfg.k_max;
  result.spectrum = compute_spectrum(spec, cfg.diag_dim, k_max);
  try {
    result.tameness = tameness_test(result.spectrum, cfg.alpha_max, cfg.a_max);
  } catch (const ValidationError& err) {
    result.tameness_error = err.what();
  }

  for (int d : cfg.semigroup_dims) {
    const BandedComplexMatrix a = build_hamiltonian(spec, d);
    result.semigroup.push_back(semigroup_curve(a, cfg.t_max, cfg.time_steps, cfg.threads));
    const SemigroupCurve& c = result.semigroup.back();
    result.semigroup_sup_log10.push_back(
        *std::max_element(c.log10_norms.begin(), c.log10_norms.end()));
  }

  json modes = json::array();
  for (std::size_t k = 0; k < result.spectrum.modes.size(); ++k) {
    const EigenMode& m = result.spectrum.modes[k];
    modes.push_back({{"k", k},
                     {"re", m.value.real()},
                     {"im", m.value.imag()},
                     {"overlap", m.overlap},
                     {"proj_norm", m.projection_norm},
                     {"converged", m.converged},
                     {"change", m.change},
                     {"proj_change", m.projection_change}});
  }
  json diag{{"command", "diagnostics"},
            {"config", config_json(cfg)},
            {"matrix_dim", cfg.diag_dim},
            {"comparison_dim", result.spectrum.comparison_dim},
            {"converged_count", result.spectrum.converged_count},
            {"k_max_clipped", k_max_clipped},
            {"modes", std::move(modes)},
            {"semigroup_dims", cfg.semigroup_dims},
            {"semigroup_sup_log10", result.semigroup_sup_log10}};
  if (k_max_clipped)
    diag["warnings"] = {"k_max clipped to dim/4 = " + std::to_string(k_max)};
  if (result.tameness) {
    diag["tameness"] = {{"verdict", result.tameness->verdict},
                        {"tame", result.tameness->tame},
                        {"alpha_fit", result.tameness->alpha_fit},
                        {"a_fit", result.tameness->a_fit},
                        {"r2_polynomial", result.tameness->r2_polynomial},
                        {"r2_exponential", result.tameness->r2_exponential},
                        {"used_modes", result.tameness->used_modes}};
  } else {
    diag["tameness"] = {{"error", result.tameness_error}};
  }
  write_json(dir / "eigen_report.json", diag);
  write_semigroup_csv(dir / "semigroup.csv", result.semigroup);
  return result;
}

void run_matrix_dump(const ExperimentConfig& cfg) {
  cfg.validate();
  const fs::path dir = prepare_output_dir(cfg);
  const PotentialSpec spec{cfg.beta, cfg.n, std::nullopt};
  write_matrix_text(dir / "matrix.txt", build_hamiltonian(spec, cfg.dim));
}

}  // namespace ptosc
