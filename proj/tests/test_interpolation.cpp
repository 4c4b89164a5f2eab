#include "doctest.h"

#include <cmath>

#include "mkit/interpolation.hpp"

using namespace mkit;

namespace {

InterpConfig quick_cfg(std::uint64_t seed) {
  InterpConfig cfg;
  cfg.grid_points = 9;
  cfg.cheap_samples = 3000;
  cfg.sup_samples = 6;
  cfg.lip_pairs = 3;
  cfg.seed = seed;
  cfg.env.multistarts = 3;
  cfg.env.inner_multistarts = 2;
  return cfg;
}

CylinderFunction constant_fn(std::size_t n, double c) {
  CylinderFunction f;
  f.name = "const";
  f.directions = {basis_vector(n, 0)};
  f.base = [c](const Vector&) { return c; };
  f.grad_base = [](const Vector&) { return Vector{0.0}; };
  f.hess_base = [](const Vector&) { return Matrix(1, 1); };
  f.growth = CylinderFunction::Growth::bounded;
  f.degree_hint = 0;
  return f;
}

}  // namespace

TEST_CASE("constant functions: K caps at min(c, rc) and interp norm is c") {
  const CameronMartinStructure cm = pseudo_inverse(SelfAdjointOp::identity(2));
  const InterpConfig cfg = quick_cfg(1);
  const double c = 0.8;
  const InterpContext ctx = make_interp_context(constant_fn(2, c), 0.5, cm, cfg);
  CHECK(ctx.phi_sup == doctest::Approx(c).epsilon(1e-12));
  CHECK(ctx.lip_seminorm == doctest::Approx(0.0));
  for (double r : {0.25, 1.0, 4.0}) {
    const KUpperResult k = k_functional_upper(ctx, r, cm, cfg);
    CHECK(k.value == doctest::Approx(std::min(c, r * c)).epsilon(1e-12));
  }
  const InterpNormResult nrm = interp_norm(ctx, cm, cfg);
  // sup_r r^{-1/2} min(c, rc) = c at r = 1
  CHECK(nrm.value == doctest::Approx(c).epsilon(0.02));
}

TEST_CASE("zero function has zero interpolation norm") {
  const CameronMartinStructure cm = pseudo_inverse(SelfAdjointOp::identity(2));
  const InterpConfig cfg = quick_cfg(2);
  const InterpContext ctx = make_interp_context(constant_fn(2, 0.0), 0.5, cm, cfg);
  const InterpNormResult nrm = interp_norm(ctx, cm, cfg);
  CHECK(nrm.value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("K upper bounds are monotone, capped by the sup norm, and decay") {
  const CameronMartinStructure cm =
      pseudo_inverse(SelfAdjointOp::diagonal({1.0, 0.5}));
  const InterpConfig cfg = quick_cfg(3);
  const InterpContext ctx =
      make_interp_context(make_cos_cylinder(basis_vector(2, 0)), 0.5, cm, cfg);
  const InterpNormResult nrm = interp_norm(ctx, cm, cfg);
  CHECK(std::isfinite(nrm.value));
  for (std::size_t i = 0; i < nrm.rows.size(); ++i) {
    CHECK(nrm.rows[i].value <= ctx.phi_sup * (1.0 + 1e-12));
    CHECK(nrm.rows[i].value <=
          nrm.theory_cap * std::pow(nrm.rows[i].r, 0.5) * (1.0 + 1e-9));
    if (i) CHECK(nrm.rows[i].value >= nrm.rows[i - 1].value * (1.0 - 1e-12));
  }
  CHECK(embedding_check(ctx, nrm).pass);
}

TEST_CASE("holder compose estimators agree for injective R and reject kernels") {
  const CameronMartinStructure cm =
      pseudo_inverse(SelfAdjointOp::diagonal({2.0, 1.0}));
  const auto rows = holder_compose_check(make_cos_cylinder(basis_vector(2, 0)), 0.5, cm,
                                         6000, 5);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].pass);
  const CameronMartinStructure bad =
      pseudo_inverse(SelfAdjointOp::diagonal({1.0, 0.0}));
  CHECK_THROWS_AS(
      holder_compose_check(make_cos_cylinder(basis_vector(2, 0)), 0.5, bad, 100, 5),
      std::invalid_argument);
}

TEST_CASE("1-D brute force bounds sandwich the upper estimate") {
  std::vector<double> xs, phis;
  for (int i = 0; i <= 200; ++i) {
    const double x = -6.0 + 12.0 * i / 200.0;
    xs.push_back(x);
    phis.push_back(std::cos(x));
  }
  for (double r : {0.01, 0.3, 1.0, 10.0}) {
    const double lower = k_lower_1d(xs, phis, r, 2.0, 200);
    const double upper = k_classical_1d(xs, phis, r, 2.0, 200);
    CHECK(lower <= upper * (1.0 + 1e-9));
    CHECK(lower >= 0.0);
    // K(r) <= |phi|_inf and K(r) <= r(|phi|_inf + Lip)
    CHECK(upper <= 1.0 + 1e-9);
    CHECK(lower <= r * 2.0 + 1e-9);
  }
  // degenerate sample sizes are rejected
  CHECK_THROWS_AS(k_lower_1d({0.0}, {1.0}, 1.0, 1.0, 10), std::invalid_argument);
}
