// Command line front end: pseudospectrum, wkb-certify, exponent, diagnostics,
// matrix-dump. Exit codes: 0 success, 2 validation failure, 3 numerical
// failure.

#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <optional>
#include <sstream>
#include <string>

#include "ptosc/config.hpp"
#include "ptosc/io.hpp"
#include "ptosc/pipeline.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct CommonFlags {
  std::optional<std::string> config_file;
  std::optional<std::string> output_dir;
  std::optional<int> threads;
  std::optional<double> beta;
  std::optional<int> n;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("-c,--config", flags.config_file, "Config file (flat key = value sections)");
  cmd->add_option("-o,--output-dir", flags.output_dir, "Output directory");
  cmd->add_option("--threads", flags.threads, "Worker threads (0 = hardware)");
  cmd->add_option("--beta", flags.beta, "Coupling of the odd imaginary term");
  cmd->add_option("--n", flags.n, "Exponent parameter: potential x^2 + i beta x^{2n+1}");
}

ptosc::ExperimentConfig resolve(const CommonFlags& flags, const std::string& command) {
  ptosc::ExperimentConfig cfg;
  if (flags.config_file) cfg = ptosc::load_config_file(*flags.config_file, std::move(cfg));
  cfg.command = command;
  if (flags.output_dir) cfg.output_dir = *flags.output_dir;
  if (flags.threads) cfg.threads = *flags.threads;
  if (flags.beta) cfg.beta = *flags.beta;
  if (flags.n) cfg.n = *flags.n;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra, pseudospectra and WKB pseudomode certificates for the oscillator "
               "family -d^2/dx^2 + x^2 + i beta x^(2n+1)"};
  app.require_subcommand(1);

  CommonFlags flags;

  // pseudospectrum
  auto* ps = app.add_subcommand("pseudospectrum",
                                "Resolvent-norm grid sweep, contours, eigenvalues, report");
  CommonFlags ps_flags;
  add_common(ps, ps_flags);
  std::optional<int> ps_dim, ps_nx, ps_ny;
  std::optional<double> ps_re_min, ps_re_max, ps_im_min, ps_im_max;
  ps->add_option("--dim", ps_dim, "Hermite truncation size");
  ps->add_option("--nx", ps_nx, "Grid points along Re");
  ps->add_option("--ny", ps_ny, "Grid points along Im");
  ps->add_option("--re-min", ps_re_min, "Window: Re lower edge");
  ps->add_option("--re-max", ps_re_max, "Window: Re upper edge");
  ps->add_option("--im-min", ps_im_min, "Window: Im lower edge");
  ps->add_option("--im-max", ps_im_max, "Window: Im upper edge");

  // wkb-certify
  auto* wkb = app.add_subcommand("wkb-certify",
                                 "Build WKB pseudomodes over an h ladder and certify the "
                                 "residual decay");
  CommonFlags wkb_flags;
  add_common(wkb, wkb_flags);
  std::optional<double> wkb_re, wkb_im;
  std::optional<std::string> wkb_ladder;
  wkb->add_option("--lambda-re", wkb_re, "Re of the semiclassical spectral parameter");
  wkb->add_option("--lambda-im", wkb_im, "Im of the semiclassical spectral parameter");
  wkb->add_option("--h-ladder", wkb_ladder, "Comma separated h values");

  // exponent
  auto* expc = app.add_subcommand("exponent",
                                  "Fit the pseudospectral growth exponent along a ray");
  CommonFlags exp_flags;
  add_common(expc, exp_flags);
  std::optional<double> exp_theta, exp_lo, exp_hi;
  std::optional<int> exp_points;
  expc->add_option("--theta", exp_theta, "Ray angle (radians)");
  expc->add_option("--abs-min", exp_lo, "Smallest |lambda| on the ray");
  expc->add_option("--abs-max", exp_hi, "Largest |lambda| on the ray");
  expc->add_option("--points", exp_points, "Number of ray points");

  // diagnostics
  auto* diag = app.add_subcommand("diagnostics",
                                  "Eigenvalues, projection norms, tameness and semigroup curve");
  CommonFlags diag_flags;
  add_common(diag, diag_flags);
  std::optional<int> diag_dim, diag_kmax;
  diag->add_option("--dim", diag_dim, "Hermite truncation size");
  diag->add_option("--k-max", diag_kmax, "Number of reported modes (<= dim/4)");

  // matrix-dump
  auto* dump = app.add_subcommand("matrix-dump", "Write the banded matrix in the text format");
  CommonFlags dump_flags;
  add_common(dump, dump_flags);
  std::optional<int> dump_dim;
  dump->add_option("--dim", dump_dim, "Hermite truncation size");

  CLI11_PARSE(app, argc, argv);

  try {
    if (ps->parsed()) {
      ptosc::ExperimentConfig cfg = resolve(ps_flags, "pseudospectrum");
      if (ps_dim) cfg.dim = *ps_dim;
      if (ps_nx) cfg.nx = *ps_nx;
      if (ps_ny) cfg.ny = *ps_ny;
      if (ps_re_min) cfg.re_min = *ps_re_min;
      if (ps_re_max) cfg.re_max = *ps_re_max;
      if (ps_im_min) cfg.im_min = *ps_im_min;
      if (ps_im_max) cfg.im_max = *ps_im_max;
      const ptosc::PseudospectrumResult r = ptosc::run_pseudospectrum(cfg);
      std::printf("pseudospectrum: %dx%d grid at dim %d in %.1f s; sandwich violations %d/%d; "
                  "trusted Re <= %g\n",
                  cfg.nx, cfg.ny, cfg.dim, r.total_seconds,
                  r.sandwich.spectrum_inclusion_violations + r.sandwich.numerical_range_violations,
                  r.sandwich.checked_points, r.trust.trusted_re_max);
    } else if (wkb->parsed()) {
      ptosc::ExperimentConfig cfg = resolve(wkb_flags, "wkb-certify");
      if (wkb_re) cfg.lambda0 = ptosc::Complex{*wkb_re, cfg.lambda0.imag()};
      if (wkb_im) cfg.lambda0 = ptosc::Complex{cfg.lambda0.real(), *wkb_im};
      if (wkb_ladder) {
        cfg.h_ladder.clear();
        std::string tok;
        std::stringstream ss(*wkb_ladder);
        while (std::getline(ss, tok, ',')) cfg.h_ladder.push_back(std::stod(tok));
      }
      const ptosc::WkbCertifyResult r = ptosc::run_wkb_certify(cfg);
      for (const std::string& w : r.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      if (r.fit_available)
        std::printf("wkb-certify: slope %.4f, C = %.4f, R^2 = %.5f over %zu points\n",
                    r.slope_fit, r.growth_constant, r.fit_r2, r.points.size());
      else
        std::printf("wkb-certify: %zu points, no decay fit\n", r.points.size());
    } else if (expc->parsed()) {
      ptosc::ExperimentConfig cfg = resolve(exp_flags, "exponent");
      if (exp_theta) cfg.theta = *exp_theta;
      if (exp_lo) cfg.abs_min = *exp_lo;
      if (exp_hi) cfg.abs_max = *exp_hi;
      if (exp_points) cfg.ray_points = *exp_points;
      const ptosc::ExponentResult r = ptosc::run_exponent(cfg);
      std::printf("exponent: model %s, fitted %.4f (target %.4f), R^2 = %.5f, %d points\n",
                  r.model.c_str(), r.exponent, r.target, r.r2, r.points_used);
    } else if (diag->parsed()) {
      ptosc::ExperimentConfig cfg = resolve(diag_flags, "diagnostics");
      if (diag_dim) cfg.diag_dim = *diag_dim;
      if (diag_kmax) cfg.k_max = *diag_kmax;
      const ptosc::DiagnosticsResult r = ptosc::run_diagnostics(cfg);
      std::printf("diagnostics: %d converged modes", r.spectrum.converged_count);
      if (r.tameness) std::printf(", verdict: %s", r.tameness->verdict.c_str());
      std::printf("\n");
    } else if (dump->parsed()) {
      ptosc::ExperimentConfig cfg = resolve(dump_flags, "matrix-dump");
      if (dump_dim) cfg.dim = *dump_dim;
      ptosc::run_matrix_dump(cfg);
      std::printf("matrix-dump: wrote %s/matrix.txt\n", cfg.output_dir.c_str());
    }
  } catch (const ptosc::ValidationError& err) {
    std::fprintf(stderr, "validation error: %s\n", err.what());
    return kExitValidation;
  } catch (const ptosc::NumericalError& err) {
    std::fprintf(stderr, "numerical failure: %s\n", err.what());
    return kExitNumerical;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitNumerical;
  }
  return 0;
}
