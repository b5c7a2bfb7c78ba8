#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ptosc/types.hpp"

namespace ptosc {

// Resolved experiment configuration. Defaults reproduce the reference
// pseudospectrum picture (beta = 1, n = 1, N = 400, window [0,20] x [-6,10],
// epsilon ladder 1e-7 .. 1e1 in quarter decades).
struct ExperimentConfig {
  std::string command;
  std::string output_dir = "out";
  int threads = 0;  // 0: hardware concurrency

  // operator
  double beta = 1.0;
  int n = 1;

  // grid / pseudospectrum
  int dim = 400;
  double re_min = 0.0, re_max = 20.0;
  double im_min = -6.0, im_max = 10.0;
  int nx = 200, ny = 160;
  std::vector<double> epsilons;  // default ladder when empty
  double sandwich_epsilon = 0.1;
  int eig_dim = 0;  // dimension for the eigenvalue overlay; 0: min(dim, 400)

  // wkb
  Complex lambda0{2.0, 1.0};
  std::vector<double> h_ladder{0.05, 0.04, 0.03, 0.025, 0.02};
  int truncation_order = 12;
  double plateau_fraction = 0.5;
  int samples = 8192;
  int cheb_grid = 129;
  double delta = 0.1;

  // exponent experiment
  double theta = 0.2;
  double abs_min = 10.0, abs_max = 60.0;
  int ray_points = 12;
  int dim_cap = 1536;

  // diagnostics
  int diag_dim = 600;
  int k_max = 10;
  double t_max = 5.0;
  int time_steps = 26;
  std::vector<int> semigroup_dims{100, 200, 400};
  double alpha_max = 2.0;
  double a_max = 100.0;

  std::vector<double> epsilon_ladder() const;  // epsilons, or the default ladder
  void validate() const;                       // throws ValidationError

  // Canonical flat "section.key = value" text of every resolved field;
  // reports embed it and hash it.
  std::string canonical_text() const;
  std::string content_hash() const;
};

// Parses the flat key-value config format:
//   [section]
//   key = value        # comment
// Unknown sections or keys are rejected. Values already set in `base` are
// overwritten by file values.
ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::filesystem::path& path, ExperimentConfig base = {});

}  // namespace ptosc
