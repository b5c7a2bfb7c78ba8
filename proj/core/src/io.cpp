#include "ptosc/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace ptosc {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open for writing: " + path.string());
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open for reading: " + path.string());
  return in;
}

double parse_double(const std::string& tok) {
  if (tok == "inf") return std::numeric_limits<double>::infinity();
  if (tok == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double v = std::stod(tok, &used);
  if (used != tok.size()) throw ValidationError("malformed number: '" + tok + "'");
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

json json_from_file(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  json j;
  in >> j;
  return j;
}

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

void write_grid_csv(const std::filesystem::path& path, const ResolventGrid& grid) {
  std::ofstream out = open_out(path);
  out << "re,im,resolvent_norm\n";
  for (int iy = 0; iy < grid.ny(); ++iy)
    for (int ix = 0; ix < grid.nx(); ++ix)
      out << format_double(grid.re_axis[static_cast<std::size_t>(ix)]) << ','
          << format_double(grid.im_axis[static_cast<std::size_t>(iy)]) << ','
          << format_double(grid.value(ix, iy)) << '\n';
}

ResolventGrid read_grid_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != "re,im,resolvent_norm")
    throw ValidationError("grid csv: bad header in " + path.string());

  std::vector<double> res, ims, vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tok = split_csv_line(line);
    if (tok.size() != 3) throw ValidationError("grid csv: bad row '" + line + "'");
    res.push_back(parse_double(tok[0]));
    ims.push_back(parse_double(tok[1]));
    vals.push_back(parse_double(tok[2]));
  }
  ResolventGrid grid;
  for (double r : res)
    if (grid.re_axis.empty() || r > grid.re_axis.back())
      grid.re_axis.push_back(r);
    else
      break;
  const std::size_t nx = grid.re_axis.size();
  if (nx == 0 || vals.size() % nx != 0)
    throw ValidationError("grid csv: rows do not form a rectangular grid");
  const std::size_t ny = vals.size() / nx;
  for (std::size_t iy = 0; iy < ny; ++iy) grid.im_axis.push_back(ims[iy * nx]);
  grid.values = std::move(vals);
  grid.at_eigenvalue.assign(grid.values.size(), 0);
  for (std::size_t i = 0; i < grid.values.size(); ++i)
    if (std::isinf(grid.values[i])) grid.at_eigenvalue[i] = 1;
  return grid;
}

void write_contours_json(const std::filesystem::path& path, const ContourSet& contours) {
  json levels = json::array();
  for (std::size_t lev = 0; lev < contours.epsilon_levels.size(); ++lev) {
    json chains = json::array();
    for (std::size_t c = 0; c < contours.polylines[lev].size(); ++c) {
      json re = json::array(), im = json::array();
      for (const Complex& p : contours.polylines[lev][c]) {
        re.push_back(p.real());
        im.push_back(p.imag());
      }
      chains.push_back({{"closed", contours.closed_flags[lev][c] != 0},
                        {"re", std::move(re)},
                        {"im", std::move(im)}});
    }
    levels.push_back({{"epsilon", contours.epsilon_levels[lev]},
                      {"polylines", std::move(chains)}});
  }
  std::ofstream out = open_out(path);
  out << json{{"levels", std::move(levels)}}.dump(1) << '\n';
}

ContourSet read_contours_json(const std::filesystem::path& path) {
  const json j = json_from_file(path);
  ContourSet set;
  for (const json& level : j.at("levels")) {
    set.epsilon_levels.push_back(level.at("epsilon").get<double>());
    std::vector<std::vector<Complex>> chains;
    std::vector<std::uint8_t> closed;
    for (const json& chain : level.at("polylines")) {
      const auto& re = chain.at("re");
      const auto& im = chain.at("im");
      if (re.size() != im.size()) throw ValidationError("contours json: re/im length mismatch");
      std::vector<Complex> pts(re.size());
      for (std::size_t i = 0; i < re.size(); ++i)
        pts[i] = Complex{re[i].get<double>(), im[i].get<double>()};
      chains.push_back(std::move(pts));
      closed.push_back(chain.at("closed").get<bool>() ? 1 : 0);
    }
    set.polylines.push_back(std::move(chains));
    set.closed_flags.push_back(std::move(closed));
  }
  return set;
}

void write_eigenvalues_csv(const std::filesystem::path& path,
                           const std::vector<EigenMode>& modes) {
  std::ofstream out = open_out(path);
  out << "k,re,im,proj_norm,converged\n";
  for (std::size_t k = 0; k < modes.size(); ++k)
    out << k << ',' << format_double(modes[k].value.real()) << ','
        << format_double(modes[k].value.imag()) << ','
        << format_double(modes[k].projection_norm) << ',' << (modes[k].converged ? 1 : 0)
        << '\n';
}

std::vector<EigenMode> read_eigenvalues_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != "k,re,im,proj_norm,converged")
    throw ValidationError("eigenvalues csv: bad header in " + path.string());
  std::vector<EigenMode> modes;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tok = split_csv_line(line);
    if (tok.size() != 5) throw ValidationError("eigenvalues csv: bad row '" + line + "'");
    EigenMode m;
    m.value = Complex{parse_double(tok[1]), parse_double(tok[2])};
    m.projection_norm = parse_double(tok[3]);
    m.converged = tok[4] == "1";
    m.overlap = std::isinf(m.projection_norm) ? 0.0 : 1.0 / m.projection_norm;
    modes.push_back(m);
  }
  return modes;
}

void write_pseudomode_csv(const std::filesystem::path& path, const std::vector<double>& xs,
                          const std::vector<Complex>& psi) {
  if (xs.size() != psi.size()) throw ValidationError("pseudomode csv: size mismatch");
  std::ofstream out = open_out(path);
  out << "x,re_psi,im_psi\n";
  for (std::size_t i = 0; i < xs.size(); ++i)
    out << format_double(xs[i]) << ',' << format_double(psi[i].real()) << ','
        << format_double(psi[i].imag()) << '\n';
}

void read_pseudomode_csv(const std::filesystem::path& path, std::vector<double>& xs,
                         std::vector<Complex>& psi) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != "x,re_psi,im_psi")
    throw ValidationError("pseudomode csv: bad header in " + path.string());
  xs.clear();
  psi.clear();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tok = split_csv_line(line);
    if (tok.size() != 3) throw ValidationError("pseudomode csv: bad row '" + line + "'");
    xs.push_back(parse_double(tok[0]));
    psi.push_back(Complex{parse_double(tok[1]), parse_double(tok[2])});
  }
}

void write_semigroup_csv(const std::filesystem::path& path,
                         const std::vector<SemigroupCurve>& curves) {
  std::ofstream out = open_out(path);
  out << "matrix_dim,t,norm,log10_norm,overflow\n";
  for (const SemigroupCurve& c : curves)
    for (std::size_t i = 0; i < c.times.size(); ++i)
      out << c.matrix_dim << ',' << format_double(c.times[i]) << ','
          << format_double(c.norms[i]) << ',' << format_double(c.log10_norms[i]) << ','
          << static_cast<int>(c.overflow[i]) << '\n';
}

std::vector<SemigroupCurve> read_semigroup_csv(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != "matrix_dim,t,norm,log10_norm,overflow")
    throw ValidationError("semigroup csv: bad header in " + path.string());
  std::vector<SemigroupCurve> curves;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tok = split_csv_line(line);
    if (tok.size() != 5) throw ValidationError("semigroup csv: bad row '" + line + "'");
    const int dim = static_cast<int>(parse_double(tok[0]));
    if (curves.empty() || curves.back().matrix_dim != dim) {
      curves.emplace_back();
      curves.back().matrix_dim = dim;
    }
    SemigroupCurve& c = curves.back();
    c.times.push_back(parse_double(tok[1]));
    c.norms.push_back(parse_double(tok[2]));
    c.log10_norms.push_back(parse_double(tok[3]));
    c.overflow.push_back(tok[4] == "1");
  }
  return curves;
}

void write_matrix_text(const std::filesystem::path& path, const BandedComplexMatrix& m) {
  std::ofstream out = open_out(path);
  out << m.dim() << ' ' << m.bandwidth() << '\n';
  for (int r = 0; r < m.dim(); ++r) {
    const int lo = std::max(0, r - m.bandwidth());
    const int hi = std::min(m.dim() - 1, r + m.bandwidth());
    for (int c = lo; c <= hi; ++c) {
      const Complex v = m(r, c);
      out << r << ' ' << c << ' ' << format_double(v.real()) << ' '
          << format_double(v.imag()) << '\n';
    }
  }
}

BandedComplexMatrix read_matrix_text(const std::filesystem::path& path) {
  std::ifstream in = open_in(path);
  int dim = 0, bw = -1;
  if (!(in >> dim >> bw)) throw ValidationError("matrix text: bad header in " + path.string());
  BandedComplexMatrix m(dim, bw);
  int r, c;
  double re, im;
  std::string re_tok, im_tok;
  while (in >> r >> c >> re_tok >> im_tok) {
    re = parse_double(re_tok);
    im = parse_double(im_tok);
    m.at(r, c) = Complex{re, im};
  }
  return m;
}

}  // namespace ptosc
