// mkit: configuration-driven verification runner.
//   mkit run [--config PATH] [--suite NAME] [--seed N] [--out PATH] [--format csv|json]
//   mkit list-suites
//   mkit show-config [--config PATH] ...

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "mkit/config.hpp"
#include "mkit/report.hpp"
#include "mkit/suites.hpp"

namespace {

struct CliOverrides {
  std::string config_path;
  std::string suite;
  std::string out;
  std::string format;
  std::uint64_t seed = 0;
  bool has_seed = false;
};

mkit::ExperimentConfig resolve(const CliOverrides& o) {
  mkit::ExperimentConfig cfg;
  if (!o.config_path.empty()) cfg = mkit::load_config(o.config_path);
  if (!o.suite.empty()) cfg.suite = o.suite;
  if (o.has_seed) cfg.seed = o.seed;
  if (!o.out.empty()) cfg.out_path = o.out;
  if (!o.format.empty()) cfg.format = o.format;
  if (const char* env = std::getenv("MALLIAVIN_KIT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < cfg.threads) cfg.threads = cap;
  }
  cfg.validate();
  return cfg;
}

void add_common(CLI::App* cmd, CliOverrides& o) {
  cmd->add_option("--config", o.config_path, "configuration file (INI)");
  cmd->add_option("--suite", o.suite, "suite name or 'all'");
  cmd->add_option("--seed", o.seed, "top-level seed")->each([&o](const std::string&) {
    o.has_seed = true;
  });
  cmd->add_option("--out", o.out, "report output path");
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"malliavin-kit verification laboratory"};
  app.require_subcommand(1);
  CliOverrides o;

  CLI::App* run = app.add_subcommand("run", "execute a verification suite");
  add_common(run, o);
  CLI::App* ls = app.add_subcommand("list-suites", "print available suite names");
  CLI::App* show = app.add_subcommand("show-config", "print the resolved configuration");
  add_common(show, o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (ls->parsed()) {
      for (const auto& name : mkit::suite_names()) std::cout << name << "\n";
      std::cout << "all\n";
      return 0;
    }
    if (show->parsed()) {
      std::cout << resolve(o).echo() << "\n";
      return 0;
    }
    const mkit::ExperimentConfig cfg = resolve(o);
    const auto start = std::chrono::steady_clock::now();
    mkit::ExperimentReport rep = mkit::run_suite(cfg);
    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string body = cfg.format == "json" ? rep.to_json() : rep.to_csv();
    if (!cfg.out_path.empty()) {
      std::ofstream out(cfg.out_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + cfg.out_path);
      out << body;
    } else {
      std::cout << body;
    }

    std::fprintf(stderr, "suite=%s checks=%zu mc=%zu wall=%.2fs %s\n", rep.suite.c_str(),
                 rep.checks.size(), rep.mc_rows.size(), rep.wall_seconds,
                 rep.all_pass() ? "PASS" : "FAIL");
    if (!rep.all_pass()) {
      for (const auto& r : rep.checks)
        if (!r.pass)
          std::fprintf(stderr, "  FAIL %s residual=%.3e tol=%.3e\n", r.name.c_str(),
                       r.residual, r.tolerance);
      for (const auto& r : rep.mc_rows)
        if (!r.pass)
          std::fprintf(stderr, "  FAIL %s z=%.2f\n", r.name.c_str(), r.z_score);
      return 1;
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
}
