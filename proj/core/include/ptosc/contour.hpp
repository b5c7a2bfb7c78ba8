#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ptosc/resolvent.hpp"
#include "ptosc/types.hpp"

namespace ptosc {

// Isolines of the resolvent-norm grid at the requested epsilon levels.
// A polyline is closed (first vertex == last) or terminates on the grid
// bounding box.
struct ContourSet {
  std::vector<double> epsilon_levels;
  std::vector<std::vector<std::vector<Complex>>> polylines;  // [level][chain][vertex]
  std::vector<std::vector<std::uint8_t>> closed_flags;       // [level][chain]
};

// Marching squares on log10(values) at levels log10(1/epsilon), with linear
// interpolation along cell edges and cell-center averaging for saddle cells.
ContourSet extract_contours(const ResolventGrid& grid, std::span<const double> epsilons);

// All isolines of one level as closed loops, obtained by padding the grid
// with a below-every-level ring; used for region membership tests.
std::vector<std::vector<Complex>> closed_level_loops(const ResolventGrid& grid, double epsilon);

// Even-odd membership of a point in a family of closed loops.
bool point_in_loops(Complex p, const std::vector<std::vector<Complex>>& loops);

// Checks that regions are nested across decreasing epsilon: every grid point
// strictly inside the smaller-epsilon region lies inside the closed loops of
// every larger epsilon. Returns the number of violations.
int count_nesting_violations(const ResolventGrid& grid, std::span<const double> epsilons);

// Largest distance a vertex strays outside the grid bounding box (0 for a
// valid set), and a check that every open chain ends on the box boundary.
bool contours_well_formed(const ResolventGrid& grid, const ContourSet& contours);

}  // namespace ptosc
