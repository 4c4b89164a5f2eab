#include "mkit/report.hpp"

#include <cstdio>

#include "json.hpp"

namespace mkit {

bool ExperimentReport::all_pass() const {
  for (const auto& r : checks)
    if (!r.pass) return false;
  for (const auto& r : mc_rows)
    if (!r.pass) return false;
  return true;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string ExperimentReport::to_csv() const {
  std::string out;
  out += "suite," + csv_quote(suite) + "\r\n";
  out += "seed," + std::to_string(seed) + "\r\n";
  out += "version," + csv_quote(version) + "\r\n";
  if (!checks.empty()) {
    out += "check,residual,tolerance,pass\r\n";
    for (const auto& r : checks)
      out += csv_quote(r.name) + "," + format_double(r.residual) + "," +
             format_double(r.tolerance) + "," + (r.pass ? "1" : "0") + "\r\n";
  }
  if (!mc_rows.empty()) {
    out += "mc_check,estimate,std_error,target,z_score,pass\r\n";
    for (const auto& r : mc_rows)
      out += csv_quote(r.name) + "," + format_double(r.estimate) + "," +
             format_double(r.std_error) + "," + format_double(r.target) + "," +
             format_double(r.z_score) + "," + (r.pass ? "1" : "0") + "\r\n";
  }
  for (const auto& t : tables) {
    std::string line;
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      if (i) line += ',';
      line += csv_quote(t.header[i]);
    }
    out += line + "\r\n";
    for (const auto& row : t.rows) {
      line.clear();
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) line += ',';
        line += csv_quote(row[i]);
      }
      out += line + "\r\n";
    }
  }
  return out;
}

std::string ExperimentReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["version"] = version;
  j["config"] = config_echo;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : checks)
    rows.push_back({{"kind", "check"},
                    {"name", r.name},
                    {"residual", r.residual},
                    {"tolerance", r.tolerance},
                    {"pass", r.pass}});
  for (const auto& r : mc_rows)
    rows.push_back({{"kind", "mc"},
                    {"name", r.name},
                    {"estimate", r.estimate},
                    {"std_error", r.std_error},
                    {"target", r.target},
                    {"z_score", r.z_score},
                    {"pass", r.pass}});
  for (const auto& t : tables) {
    nlohmann::json jt;
    jt["kind"] = "table";
    jt["header"] = t.header;
    jt["rows"] = t.rows;
    rows.push_back(jt);
  }
  j["rows"] = rows;
  j["pass"] = all_pass();
  return j.dump(2);
}

}  // namespace mkit
