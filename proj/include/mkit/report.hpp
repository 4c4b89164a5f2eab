#pragma once

// Structured experiment reports: named check rows with residuals and
// tolerances, Monte-Carlo rows with confidence radii, and CSV/JSON
// serialization.  Report bodies are deterministic for a fixed config and
// seed; wall time is kept out of the serialized body.

#include <optional>
#include <string>
#include <vector>

namespace mkit {

struct CheckRow {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct MonteCarloRow {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double target = 0.0;
  double z_score = 0.0;
  bool pass = false;  // |z| <= 3
};

// free-form tabular payload (e.g. the Lasry-Lions grid)
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct ExperimentReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::string version;
  std::string config_echo;
  std::vector<CheckRow> checks;
  std::vector<MonteCarloRow> mc_rows;
  std::vector<Table> tables;
  double wall_seconds = 0.0;  // console only, excluded from serialization

  bool all_pass() const;
  std::string to_csv() const;   // RFC 4180 quoting
  std::string to_json() const;  // single object with a "rows" array
};

std::string csv_quote(const std::string& s);
std::string format_double(double v);

}  // namespace mkit
