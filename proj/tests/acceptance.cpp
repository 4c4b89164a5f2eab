// Acceptance gate: one line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "mkit/suites.hpp"

namespace {

using mkit::ExperimentReport;

struct Timed {
  ExperimentReport rep;
  double seconds = 0.0;
};

Timed run(const std::string& suite, const mkit::ExperimentConfig& base) {
  mkit::ExperimentConfig cfg = base;
  cfg.suite = suite;
  const auto t0 = std::chrono::steady_clock::now();
  Timed out;
  out.rep = mkit::run_suite(cfg);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

// every check/mc row whose name starts with one of the prefixes passes,
// and at least one such row exists
bool rows_pass(const ExperimentReport& rep, const std::vector<std::string>& prefixes,
               std::size_t* count = nullptr) {
  std::size_t seen = 0;
  bool ok = true;
  auto match = [&](const std::string& name) {
    for (const auto& p : prefixes)
      if (name.rfind(p, 0) == 0) return true;
    return false;
  };
  for (const auto& r : rep.checks)
    if (match(r.name)) {
      ++seen;
      ok = ok && r.pass;
    }
  for (const auto& r : rep.mc_rows)
    if (match(r.name)) {
      ++seen;
      ok = ok && r.pass;
    }
  if (count) *count = seen;
  return ok && seen > 0;
}

int failures = 0;

void report(int idx, const char* what, bool pass) {
  std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", idx, what);
  if (!pass) ++failures;
}

}  // namespace

int main() {
  mkit::ExperimentConfig base;
  base.n = 4;
  base.seed = 20260823;

  const Timed grad = run("gradcheck", base);
  report(1, "pseudo-inverse identities on 50 randomized operators, < 10 s",
         rows_pass(grad.rep, {"pinv_identity_"}) && grad.seconds < 10.0);
  report(2, "gradient relations, transport isometry and FD oracles, < 30 s",
         rows_pass(grad.rep, {"grad_", "norm_equality", "transport_", "fd_"}) &&
             grad.seconds < 30.0);
  report(3, "kernel annihilation of the R-gradient and R-hessian, < 10 s",
         rows_pass(grad.rep, {"kernel_annihilation_"}) && grad.seconds < 10.0);

  const Timed ibp = run("ibp", base);
  std::size_t ibp_pairs = 0;
  const bool ibp_ok = rows_pass(ibp.rep, {"ibp_"}, &ibp_pairs);
  report(4, "integration by parts within 3 sigma on >= 10 pairs plus E[W^4] oracle, < 60 s",
         ibp_ok && ibp_pairs >= 10 && rows_pass(ibp.rep, {"moment_oracle_EW4"}) &&
             ibp.seconds < 60.0);

  const Timed chaos = run("chaos", base);
  report(5, "chaos/domain identity: quadrature-exact polynomials and the cos oracle, < 30 s",
         rows_pass(chaos.rep, {"domain_identity_", "domain_identity["}) &&
             rows_pass(chaos.rep, {"cos_chaos_", "cos_domain_"}) && chaos.seconds < 30.0);

  const Timed mal = run("malliavin", base);
  report(6, "picture equivalence: Gross = Q^{1/2} CDP and matching Sobolev norms, < 60 s",
         rows_pass(mal.rep, {"gross_eq_sqrtQ_cdp", "sobolev2_picture_gap"}) &&
             mal.seconds < 60.0);

  const Timed ll = run("lasry-lions", base);
  report(7, "quadratic closed-form and rank-1 nested-grid oracles, < 5 min",
         rows_pass(ll.rep, {"quadratic_oracle", "nested_grid_oracle"}) &&
             ll.seconds < 300.0);
  report(8, "boundedness/approximation/derivative bounds with zero violations and decay slope, < 5 min",
         rows_pass(ll.rep, {"ll_violations", "ll_unconverged", "ll_decay_slope"}) &&
             ll.seconds < 300.0);

  const Timed interp = run("interp", base);
  report(9, "K-functional caps, forward embedding by 3, and the 1-D 5x sandwich, < 5 min",
         rows_pass(interp.rep, {"k_upper_", "embedding[", "k1d_"}) &&
             interp.seconds < 300.0);

  // reproducibility: identical config + seed give byte-identical bodies
  {
    mkit::ExperimentConfig quick = base;
    quick.ibp_samples = 20000;
    quick.mc_samples = 20000;
    quick.battery_points = 20;
    quick.suite = "all";
    const std::string a = mkit::run_suite(quick).to_csv();
    const std::string b = mkit::run_suite(quick).to_csv();
    const std::string aj = mkit::run_suite(quick).to_json();
    const std::string bj = mkit::run_suite(quick).to_json();
    report(10, "byte-identical report bodies across consecutive runs", a == b && aj == bj);
  }

  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
