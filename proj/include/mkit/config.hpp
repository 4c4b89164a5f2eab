#pragma once

// Flat INI-style experiment configuration with per-suite sections and a
// canonical echo string used for provenance (the echo, together with the
// seed, determines the report byte-for-byte).

#include <map>
#include <string>
#include <vector>

#include "mkit/linalg.hpp"

namespace mkit {

struct ExperimentConfig {
  std::string suite = "all";
  std::size_t n = 4;
  Vector r_eigenvalues;         // empty: default spectrum for dimension n
  Vector q_eigenvalues;         // empty: default injective spectrum
  std::uint64_t rotation_seed = 0;  // 0 keeps the frames diagonal
  std::uint64_t seed = 12345;
  std::string out_path;
  std::string format = "csv";

  std::size_t ibp_samples = 1000000;
  std::size_t mc_samples = 200000;
  std::size_t battery_points = 100;   // evaluation points per function
  std::vector<double> t_grid = {1e-1, 1e-2, 1e-3, 1e-4};
  double alpha = 0.5;
  std::size_t r_grid_points = 25;
  int threads = 1;

  void validate() const;  // throws std::invalid_argument with the field name
  std::string echo() const;
};

// Parse the INI file at `path`.  Sections name suites ([general] or no
// section for the shared keys); unknown keys are rejected.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

std::vector<double> parse_double_list(const std::string& s);

}  // namespace mkit
