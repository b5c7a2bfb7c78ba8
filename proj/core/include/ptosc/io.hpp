#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ptosc/banded.hpp"
#include "ptosc/contour.hpp"
#include "ptosc/resolvent.hpp"
#include "ptosc/spectrum.hpp"
#include "ptosc/types.hpp"

namespace ptosc {

// Resolvent grid as CSV with header "re,im,resolvent_norm" (one row per grid
// point, im-major), "inf" for at-eigenvalue points.
void write_grid_csv(const std::filesystem::path& path, const ResolventGrid& grid);
ResolventGrid read_grid_csv(const std::filesystem::path& path);

// Contours as JSON: per epsilon level a list of vertex chains.
void write_contours_json(const std::filesystem::path& path, const ContourSet& contours);
ContourSet read_contours_json(const std::filesystem::path& path);

// Eigenvalue table "k,re,im,proj_norm,converged" (k 0-based by real part).
void write_eigenvalues_csv(const std::filesystem::path& path,
                           const std::vector<EigenMode>& modes);
std::vector<EigenMode> read_eigenvalues_csv(const std::filesystem::path& path);

// Pseudomode samples "x,re_psi,im_psi".
void write_pseudomode_csv(const std::filesystem::path& path, const std::vector<double>& xs,
                          const std::vector<Complex>& psi);
void read_pseudomode_csv(const std::filesystem::path& path, std::vector<double>& xs,
                         std::vector<Complex>& psi);

// Semigroup curve rows "matrix_dim,t,norm,log10_norm,overflow".
void write_semigroup_csv(const std::filesystem::path& path,
                         const std::vector<SemigroupCurve>& curves);
std::vector<SemigroupCurve> read_semigroup_csv(const std::filesystem::path& path);

// Banded matrix text format: header line "N bandwidth", then one line
// "row col re im" per stored entry in row-major band order.
void write_matrix_text(const std::filesystem::path& path, const BandedComplexMatrix& m);
BandedComplexMatrix read_matrix_text(const std::filesystem::path& path);

// Full-precision decimal formatting (round-trips through strtod).
std::string format_double(double v);

// 64-bit FNV-1a, hex encoded; used to stamp reports with their inputs.
std::string fnv1a_hex(const std::string& text);

}  // namespace ptosc
