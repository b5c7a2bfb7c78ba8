#include "ptosc/contour.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace ptosc {

namespace {

// log10 values capped so at-eigenvalue points stay orderable.
constexpr double kLogCap = 320.0;

struct Field {
  std::vector<double> xs, ys;
  std::vector<double> f;  // row-major over y
  int nx = 0, ny = 0;
  double at(int ix, int iy) const {
    return f[static_cast<std::size_t>(iy) * nx + static_cast<std::size_t>(ix)];
  }
};

Field make_field(const ResolventGrid& grid, bool pad_with_floor) {
  Field fd;
  const int nx = grid.nx(), ny = grid.ny();
  auto logval = [&](int ix, int iy) {
    const double v = grid.value(ix, iy);
    return std::isinf(v) ? kLogCap : std::min(std::log10(v), kLogCap);
  };
  if (!pad_with_floor) {
    fd.nx = nx;
    fd.ny = ny;
    fd.xs = grid.re_axis;
    fd.ys = grid.im_axis;
    fd.f.resize(static_cast<std::size_t>(nx) * ny);
    for (int iy = 0; iy < ny; ++iy)
      for (int ix = 0; ix < nx; ++ix)
        fd.f[static_cast<std::size_t>(iy) * nx + ix] = logval(ix, iy);
    return fd;
  }
  // One ring of ghost points far below every level turns boundary-crossing
  // isolines into closed loops.
  fd.nx = nx + 2;
  fd.ny = ny + 2;
  const double dx = grid.re_axis[1] - grid.re_axis[0];
  const double dy = grid.im_axis[1] - grid.im_axis[0];
  fd.xs.resize(static_cast<std::size_t>(fd.nx));
  fd.ys.resize(static_cast<std::size_t>(fd.ny));
  fd.xs.front() = grid.re_axis.front() - dx;
  fd.xs.back() = grid.re_axis.back() + dx;
  std::copy(grid.re_axis.begin(), grid.re_axis.end(), fd.xs.begin() + 1);
  fd.ys.front() = grid.im_axis.front() - dy;
  fd.ys.back() = grid.im_axis.back() + dy;
  std::copy(grid.im_axis.begin(), grid.im_axis.end(), fd.ys.begin() + 1);
  fd.f.assign(static_cast<std::size_t>(fd.nx) * fd.ny, -2.0 * kLogCap);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix)
      fd.f[static_cast<std::size_t>(iy + 1) * fd.nx + (ix + 1)] = logval(ix, iy);
  return fd;
}

// Edge identifiers: (grid point index << 1) | orientation, orientation 0 for
// the edge to (ix+1, iy), 1 for the edge to (ix, iy+1).
std::uint64_t edge_key(int ix, int iy, int nx, int orient) {
  return (static_cast<std::uint64_t>(iy) * static_cast<std::uint64_t>(nx) +
          static_cast<std::uint64_t>(ix)) * 2ull + static_cast<std::uint64_t>(orient);
}

struct LevelLines {
  std::vector<std::vector<Complex>> chains;
  std::vector<std::uint8_t> closed;
};

LevelLines march_level(const Field& fd, double level) {
  const int nx = fd.nx, ny = fd.ny;
  // Nudge samples exactly at the level so every crossing is transversal.
  auto value = [&](int ix, int iy) {
    const double v = fd.at(ix, iy);
    if (v == level) return level + 1e-12 * std::max(1.0, std::abs(level));
    return v;
  };

  std::unordered_map<std::uint64_t, Complex> vertex;
  auto edge_vertex = [&](int ix, int iy, int orient) {
    const std::uint64_t key = edge_key(ix, iy, nx, orient);
    auto it = vertex.find(key);
    if (it != vertex.end()) return key;
    const int jx = orient == 0 ? ix + 1 : ix;
    const int jy = orient == 0 ? iy : iy + 1;
    const double f0 = value(ix, iy), f1 = value(jx, jy);
    double t = (level - f0) / (f1 - f0);
    t = std::clamp(t, 0.0, 1.0);
    const double x = fd.xs[static_cast<std::size_t>(ix)] +
                     t * (fd.xs[static_cast<std::size_t>(jx)] - fd.xs[static_cast<std::size_t>(ix)]);
    const double y = fd.ys[static_cast<std::size_t>(iy)] +
                     t * (fd.ys[static_cast<std::size_t>(jy)] - fd.ys[static_cast<std::size_t>(iy)]);
    vertex.emplace(key, Complex{x, y});
    return key;
  };

  std::vector<std::pair<std::uint64_t, std::uint64_t>> segments;
  for (int iy = 0; iy + 1 < ny; ++iy) {
    for (int ix = 0; ix + 1 < nx; ++ix) {
      const bool b00 = value(ix, iy) >= level;
      const bool b10 = value(ix + 1, iy) >= level;
      const bool b11 = value(ix + 1, iy + 1) >= level;
      const bool b01 = value(ix, iy + 1) >= level;
      const int idx = (b00 ? 1 : 0) | (b10 ? 2 : 0) | (b11 ? 4 : 0) | (b01 ? 8 : 0);
      if (idx == 0 || idx == 15) continue;

      // Cell edges: bottom, right, top, left.
      const std::uint64_t bottom = edge_vertex(ix, iy, 0);
      const std::uint64_t right = edge_vertex(ix + 1, iy, 1);
      const std::uint64_t top = edge_vertex(ix, iy + 1, 0);
      const std::uint64_t left = edge_vertex(ix, iy, 1);

      switch (idx) {
        case 1: case 14: segments.emplace_back(left, bottom); break;
        case 2: case 13: segments.emplace_back(bottom, right); break;
        case 4: case 11: segments.emplace_back(right, top); break;
        case 8: case 7: segments.emplace_back(top, left); break;
        case 3: case 12: segments.emplace_back(left, right); break;
        case 6: case 9: segments.emplace_back(bottom, top); break;
        case 5: case 10: {
          const double center = 0.25 * (value(ix, iy) + value(ix + 1, iy) +
                                        value(ix + 1, iy + 1) + value(ix, iy + 1));
          const bool center_above = center >= level;
          const bool diag_00_11 = (idx == 5) == center_above;
          if (diag_00_11) {
            segments.emplace_back(left, top);
            segments.emplace_back(bottom, right);
          } else {
            segments.emplace_back(left, bottom);
            segments.emplace_back(right, top);
          }
          break;
        }
        default: break;
      }
    }
  }

  // Stitch segments into chains: every interior crossing point touches
  // exactly two segments, boundary points one.
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> incident;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    incident[segments[s].first].push_back(s);
    incident[segments[s].second].push_back(s);
  }

  LevelLines out;
  std::vector<bool> used(segments.size(), false);

  auto walk = [&](std::size_t seed, std::uint64_t start_key) {
    std::vector<std::uint64_t> keys{start_key};
    std::size_t seg = seed;
    std::uint64_t here = start_key;
    for (;;) {
      used[seg] = true;
      const std::uint64_t next =
          segments[seg].first == here ? segments[seg].second : segments[seg].first;
      keys.push_back(next);
      const auto& inc = incident[next];
      std::size_t cont = segments.size();
      for (std::size_t cand : inc)
        if (!used[cand]) { cont = cand; break; }
      if (cont == segments.size()) break;
      seg = cont;
      here = next;
    }
    std::vector<Complex> pts(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) pts[i] = vertex.at(keys[i]);
    const bool closed = keys.front() == keys.back() && keys.size() > 2;
    out.chains.push_back(std::move(pts));
    out.closed.push_back(closed ? 1 : 0);
  };

  // Open chains first (seeded at degree-1 points), then remaining cycles.
  for (const auto& [key, inc] : incident) {
    if (inc.size() != 1) continue;
    if (!used[inc.front()]) walk(inc.front(), key);
  }
  for (std::size_t s = 0; s < segments.size(); ++s)
    if (!used[s]) walk(s, segments[s].first);

  return out;
}

}  // namespace

ContourSet extract_contours(const ResolventGrid& grid, std::span<const double> epsilons) {
  for (double eps : epsilons)
    if (!(eps > 0.0)) throw ValidationError("extract_contours: epsilon levels must be positive");
  const Field fd = make_field(grid, /*pad_with_floor=*/false);
  ContourSet set;
  for (double eps : epsilons) {
    LevelLines lines = march_level(fd, -std::log10(eps));
    set.epsilon_levels.push_back(eps);
    set.polylines.push_back(std::move(lines.chains));
    set.closed_flags.push_back(std::move(lines.closed));
  }
  return set;
}

std::vector<std::vector<Complex>> closed_level_loops(const ResolventGrid& grid, double epsilon) {
  const Field fd = make_field(grid, /*pad_with_floor=*/true);
  LevelLines lines = march_level(fd, -std::log10(epsilon));
  return std::move(lines.chains);
}

bool point_in_loops(Complex p, const std::vector<std::vector<Complex>>& loops) {
  bool inside = false;
  for (const auto& loop : loops) {
    for (std::size_t i = 0, j = loop.size() - 1; i < loop.size(); j = i++) {
      const Complex a = loop[j], b = loop[i];
      const bool crosses = (a.imag() > p.imag()) != (b.imag() > p.imag());
      if (!crosses) continue;
      const double x_at =
          a.real() + (p.imag() - a.imag()) / (b.imag() - a.imag()) * (b.real() - a.real());
      if (p.real() < x_at) inside = !inside;
    }
  }
  return inside;
}

int count_nesting_violations(const ResolventGrid& grid, std::span<const double> epsilons) {
  std::vector<double> sorted(epsilons.begin(), epsilons.end());
  std::sort(sorted.begin(), sorted.end());
  int violations = 0;
  for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
    const double eps_small = sorted[k], eps_big = sorted[k + 1];
    const double level_small = -std::log10(eps_small);
    const auto outer = closed_level_loops(grid, eps_big);
    for (int iy = 0; iy < grid.ny(); ++iy)
      for (int ix = 0; ix < grid.nx(); ++ix) {
        const double v = grid.value(ix, iy);
        const double f = std::isinf(v) ? kLogCap : std::log10(v);
        if (f <= level_small + 1e-9) continue;  // not strictly inside the small region
        if (!point_in_loops(grid.point(ix, iy), outer)) ++violations;
      }
  }
  return violations;
}

bool contours_well_formed(const ResolventGrid& grid, const ContourSet& contours) {
  const double x0 = grid.re_axis.front(), x1 = grid.re_axis.back();
  const double y0 = grid.im_axis.front(), y1 = grid.im_axis.back();
  const double slack_x = 1e-9 * (x1 - x0), slack_y = 1e-9 * (y1 - y0);
  auto on_boundary = [&](Complex p) {
    return std::abs(p.real() - x0) <= slack_x || std::abs(p.real() - x1) <= slack_x ||
           std::abs(p.imag() - y0) <= slack_y || std::abs(p.imag() - y1) <= slack_y;
  };
  for (std::size_t lev = 0; lev < contours.polylines.size(); ++lev) {
    for (std::size_t c = 0; c < contours.polylines[lev].size(); ++c) {
      const auto& chain = contours.polylines[lev][c];
      for (const Complex& p : chain) {
        if (p.real() < x0 - slack_x || p.real() > x1 + slack_x || p.imag() < y0 - slack_y ||
            p.imag() > y1 + slack_y)
          return false;
      }
      const bool closed = contours.closed_flags[lev][c] != 0;
      if (!closed && !(on_boundary(chain.front()) && on_boundary(chain.back()))) return false;
    }
  }
  return true;
}

}  // namespace ptosc
