#include "mkit/config.hpp"

#include <fstream>
#include <sstream>

#include "mkit/report.hpp"

namespace mkit {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

const std::vector<std::string> kSuites = {"gradcheck", "malliavin",   "ibp", "chaos",
                                          "lasry-lions", "interp", "all"};

}  // namespace

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    std::size_t pos = 0;
    const double v = std::stod(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad number in list: " + item);
    out.push_back(v);
  }
  return out;
}

void ExperimentConfig::validate() const {
  bool known = false;
  for (const auto& s : kSuites) known = known || s == suite;
  if (!known) throw std::invalid_argument("config: unknown suite '" + suite + "'");
  if (n < 1 || n > 64) throw std::invalid_argument("config: n must lie in [1, 64]");
  if (format != "csv" && format != "json")
    throw std::invalid_argument("config: format must be csv or json");
  if (!r_eigenvalues.empty() && r_eigenvalues.size() != n)
    throw std::invalid_argument("config: r_eigenvalues must have length n");
  if (!q_eigenvalues.empty() && q_eigenvalues.size() != n)
    throw std::invalid_argument("config: q_eigenvalues must have length n");
  if (t_grid.empty()) throw std::invalid_argument("config: t_grid must be nonempty");
  for (double t : t_grid)
    if (t <= 0.0) throw std::invalid_argument("config: t_grid entries must be positive");
  if (alpha <= 0.0 || alpha > 1.0)
    throw std::invalid_argument("config: alpha must lie in (0, 1]");
  if (r_grid_points < 2) throw std::invalid_argument("config: r_grid_points must be >= 2");
  if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
}

std::string ExperimentConfig::echo() const {
  std::string out;
  auto kv = [&out](const std::string& k, const std::string& v) {
    out += k + "=" + v + ";";
  };
  auto list = [](const Vector& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ' ';
      s += format_double(v[i]);
    }
    return s;
  };
  kv("suite", suite);
  kv("n", std::to_string(n));
  kv("r_eigenvalues", list(r_eigenvalues));
  kv("q_eigenvalues", list(q_eigenvalues));
  kv("rotation_seed", std::to_string(rotation_seed));
  kv("seed", std::to_string(seed));
  kv("format", format);
  kv("ibp_samples", std::to_string(ibp_samples));
  kv("mc_samples", std::to_string(mc_samples));
  kv("battery_points", std::to_string(battery_points));
  kv("t_grid", list(t_grid));
  kv("alpha", format_double(alpha));
  kv("r_grid_points", std::to_string(r_grid_points));
  kv("threads", std::to_string(threads));
  return out;
}

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::stringstream ss(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    bool known = true;
    try {
      if (key == "suite") cfg.suite = val;
      else if (key == "n") cfg.n = static_cast<std::size_t>(std::stoul(val));
      else if (key == "r_eigenvalues") cfg.r_eigenvalues = parse_double_list(val);
      else if (key == "q_eigenvalues") cfg.q_eigenvalues = parse_double_list(val);
      else if (key == "rotation_seed") cfg.rotation_seed = std::stoull(val);
      else if (key == "seed") cfg.seed = std::stoull(val);
      else if (key == "out") cfg.out_path = val;
      else if (key == "format") cfg.format = val;
      else if (key == "ibp_samples") cfg.ibp_samples = std::stoul(val);
      else if (key == "mc_samples") cfg.mc_samples = std::stoul(val);
      else if (key == "battery_points") cfg.battery_points = std::stoul(val);
      else if (key == "t_grid") cfg.t_grid = parse_double_list(val);
      else if (key == "alpha") cfg.alpha = std::stod(val);
      else if (key == "r_grid_points") cfg.r_grid_points = std::stoul(val);
      else if (key == "threads") cfg.threads = std::stoi(val);
      else
        known = false;
    } catch (const std::exception&) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": bad value for '" + key + "'");
    }
    if (!known)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": unknown key '" + key + "'" +
                                  (section.empty() ? "" : " in [" + section + "]"));
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace mkit
