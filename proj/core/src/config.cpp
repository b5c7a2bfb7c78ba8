#include "ptosc/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "ptosc/io.hpp"

namespace ptosc {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    std::size_t used = 0;
    out.push_back(std::stod(tok, &used));
    if (used != tok.size()) throw ValidationError("config: malformed number '" + tok + "'");
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (double v : parse_double_list(s)) out.push_back(static_cast<int>(v));
  return out;
}

double parse_one_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw ValidationError("config: malformed number '" + s + "'");
  return v;
}

int parse_one_int(const std::string& s) {
  return static_cast<int>(std::llround(parse_one_double(s)));
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

std::vector<double> ExperimentConfig::epsilon_ladder() const {
  if (!epsilons.empty()) return epsilons;
  std::vector<double> ladder;
  for (double e = -7.0; e <= 1.0 + 1e-9; e += 0.25) ladder.push_back(std::pow(10.0, e));
  return ladder;
}

void ExperimentConfig::validate() const {
  if (n < 1) throw ValidationError("config: n must be >= 1");
  if (!std::isfinite(beta)) throw ValidationError("config: beta must be finite");
  if (dim < 2 * n + 2) throw ValidationError("config: dim too small for the band");
  if (nx < 2 || ny < 2) throw ValidationError("config: nx and ny must be >= 2");
  if (!(re_min < re_max) || !(im_min < im_max))
    throw ValidationError("config: window ranges must be ordered");
  for (double e : epsilons)
    if (!(e > 0.0)) throw ValidationError("config: epsilon levels must be positive");
  if (!(sandwich_epsilon > 0.0)) throw ValidationError("config: sandwich_epsilon must be > 0");
  if (eig_dim < 0) throw ValidationError("config: eig_dim must be >= 0");
  if (threads < 0) throw ValidationError("config: threads must be >= 0");

  if (h_ladder.empty()) throw ValidationError("config: h_ladder must not be empty");
  for (double h : h_ladder)
    if (!(h > 0.0)) throw ValidationError("config: h values must be positive");
  if (truncation_order < 0) throw ValidationError("config: truncation_order must be >= 0");
  if (!(plateau_fraction > 0.0 && plateau_fraction < 1.0))
    throw ValidationError("config: plateau_fraction must be in (0, 1)");
  if (samples < 4096) throw ValidationError("config: samples must be >= 4096");
  if (cheb_grid < 9 || cheb_grid % 2 == 0)
    throw ValidationError("config: cheb_grid must be odd and >= 9");
  if (!(delta >= 0.0 && delta < 0.5 * M_PI))
    throw ValidationError("config: delta must be in [0, pi/2)");

  if (!(abs_min > 0.0 && abs_max > abs_min))
    throw ValidationError("config: exponent magnitudes must satisfy 0 < abs_min < abs_max");
  if (ray_points < 3) throw ValidationError("config: ray_points must be >= 3");
  if (dim_cap < dim / 2) throw ValidationError("config: dim_cap too small");

  if (diag_dim < 8) throw ValidationError("config: diag_dim must be >= 8");
  if (k_max < 1) throw ValidationError("config: k_max must be >= 1");
  if (!(t_max > 0.0)) throw ValidationError("config: t_max must be positive");
  if (time_steps < 2) throw ValidationError("config: time_steps must be >= 2");
  if (semigroup_dims.empty()) throw ValidationError("config: semigroup_dims must not be empty");
  for (int d : semigroup_dims)
    if (d < 8) throw ValidationError("config: semigroup dims must be >= 8");
}

std::string ExperimentConfig::canonical_text() const {
  std::ostringstream out;
  out << "[run]\n";
  out << "command = " << command << '\n';
  out << "output_dir = " << output_dir << '\n';
  out << "threads = " << threads << '\n';
  out << "[operator]\n";
  out << "beta = " << format_double(beta) << '\n';
  out << "n = " << n << '\n';
  out << "[grid]\n";
  out << "dim = " << dim << '\n';
  out << "re_min = " << format_double(re_min) << '\n';
  out << "re_max = " << format_double(re_max) << '\n';
  out << "im_min = " << format_double(im_min) << '\n';
  out << "im_max = " << format_double(im_max) << '\n';
  out << "nx = " << nx << '\n';
  out << "ny = " << ny << '\n';
  out << "epsilons = " << join(epsilon_ladder()) << '\n';
  out << "sandwich_epsilon = " << format_double(sandwich_epsilon) << '\n';
  out << "eig_dim = " << eig_dim << '\n';
  out << "[wkb]\n";
  out << "lambda0_re = " << format_double(lambda0.real()) << '\n';
  out << "lambda0_im = " << format_double(lambda0.imag()) << '\n';
  out << "h_ladder = " << join(h_ladder) << '\n';
  out << "truncation_order = " << truncation_order << '\n';
  out << "plateau_fraction = " << format_double(plateau_fraction) << '\n';
  out << "samples = " << samples << '\n';
  out << "cheb_grid = " << cheb_grid << '\n';
  out << "delta = " << format_double(delta) << '\n';
  out << "[exponent]\n";
  out << "theta = " << format_double(theta) << '\n';
  out << "abs_min = " << format_double(abs_min) << '\n';
  out << "abs_max = " << format_double(abs_max) << '\n';
  out << "ray_points = " << ray_points << '\n';
  out << "dim_cap = " << dim_cap << '\n';
  out << "[diagnostics]\n";
  out << "diag_dim = " << diag_dim << '\n';
  out << "k_max = " << k_max << '\n';
  out << "t_max = " << format_double(t_max) << '\n';
  out << "time_steps = " << time_steps << '\n';
  out << "semigroup_dims = " << join(semigroup_dims) << '\n';
  out << "alpha_max = " << format_double(alpha_max) << '\n';
  out << "a_max = " << format_double(a_max) << '\n';
  return out.str();
}

std::string ExperimentConfig::content_hash() const { return fnv1a_hex(canonical_text()); }

ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base) {
  ExperimentConfig cfg = std::move(base);

  const std::map<std::string, std::function<void(const std::string&)>> setters = {
      {"run.command", [&](const std::string& v) { cfg.command = v; }},
      {"run.output_dir", [&](const std::string& v) { cfg.output_dir = v; }},
      {"run.threads", [&](const std::string& v) { cfg.threads = parse_one_int(v); }},
      {"operator.beta", [&](const std::string& v) { cfg.beta = parse_one_double(v); }},
      {"operator.n", [&](const std::string& v) { cfg.n = parse_one_int(v); }},
      {"grid.dim", [&](const std::string& v) { cfg.dim = parse_one_int(v); }},
      {"grid.re_min", [&](const std::string& v) { cfg.re_min = parse_one_double(v); }},
      {"grid.re_max", [&](const std::string& v) { cfg.re_max = parse_one_double(v); }},
      {"grid.im_min", [&](const std::string& v) { cfg.im_min = parse_one_double(v); }},
      {"grid.im_max", [&](const std::string& v) { cfg.im_max = parse_one_double(v); }},
      {"grid.nx", [&](const std::string& v) { cfg.nx = parse_one_int(v); }},
      {"grid.ny", [&](const std::string& v) { cfg.ny = parse_one_int(v); }},
      {"grid.epsilons", [&](const std::string& v) { cfg.epsilons = parse_double_list(v); }},
      {"grid.sandwich_epsilon",
       [&](const std::string& v) { cfg.sandwich_epsilon = parse_one_double(v); }},
      {"grid.eig_dim", [&](const std::string& v) { cfg.eig_dim = parse_one_int(v); }},
      {"wkb.lambda0_re",
       [&](const std::string& v) { cfg.lambda0 = Complex{parse_one_double(v), cfg.lambda0.imag()}; }},
      {"wkb.lambda0_im",
       [&](const std::string& v) { cfg.lambda0 = Complex{cfg.lambda0.real(), parse_one_double(v)}; }},
      {"wkb.h_ladder", [&](const std::string& v) { cfg.h_ladder = parse_double_list(v); }},
      {"wkb.truncation_order",
       [&](const std::string& v) { cfg.truncation_order = parse_one_int(v); }},
      {"wkb.plateau_fraction",
       [&](const std::string& v) { cfg.plateau_fraction = parse_one_double(v); }},
      {"wkb.samples", [&](const std::string& v) { cfg.samples = parse_one_int(v); }},
      {"wkb.cheb_grid", [&](const std::string& v) { cfg.cheb_grid = parse_one_int(v); }},
      {"wkb.delta", [&](const std::string& v) { cfg.delta = parse_one_double(v); }},
      {"exponent.theta", [&](const std::string& v) { cfg.theta = parse_one_double(v); }},
      {"exponent.abs_min", [&](const std::string& v) { cfg.abs_min = parse_one_double(v); }},
      {"exponent.abs_max", [&](const std::string& v) { cfg.abs_max = parse_one_double(v); }},
      {"exponent.ray_points", [&](const std::string& v) { cfg.ray_points = parse_one_int(v); }},
      {"exponent.dim_cap", [&](const std::string& v) { cfg.dim_cap = parse_one_int(v); }},
      {"diagnostics.diag_dim", [&](const std::string& v) { cfg.diag_dim = parse_one_int(v); }},
      {"diagnostics.k_max", [&](const std::string& v) { cfg.k_max = parse_one_int(v); }},
      {"diagnostics.t_max", [&](const std::string& v) { cfg.t_max = parse_one_double(v); }},
      {"diagnostics.time_steps",
       [&](const std::string& v) { cfg.time_steps = parse_one_int(v); }},
      {"diagnostics.semigroup_dims",
       [&](const std::string& v) { cfg.semigroup_dims = parse_int_list(v); }},
      {"diagnostics.alpha_max", [&](const std::string& v) { cfg.alpha_max = parse_one_double(v); }},
      {"diagnostics.a_max", [&](const std::string& v) { cfg.a_max = parse_one_double(v); }},
  };

  std::istringstream in(text);
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ValidationError("config line " + std::to_string(line_no) + ": bad section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = section + "." + trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end())
      throw ValidationError("config line " + std::to_string(line_no) + ": unknown key '" + key +
                            "'");
    it->second(value);
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::filesystem::path& path, ExperimentConfig base) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), std::move(base));
}

}  // namespace ptosc
