#include "doctest.h"

#include <cmath>

#include "mkit/lasry_lions.hpp"
#include "mkit/rng.hpp"

using namespace mkit;

namespace {

CameronMartinStructure ll_cm() {
  return pseudo_inverse(SelfAdjointOp::rotated({1.0, 0.5, 0.0}, 23));
}

Objective quad_hr(double a, const CameronMartinStructure& cm) {
  Objective o;
  o.name = "quad";
  o.value = [a, &cm](const Vector& x) {
    const Vector p = cm.pinv_apply(x);
    return a * mkit::dot(p, p);
  };
  o.grad = [a, &cm](const Vector& x) {
    return 2.0 * a * cm.pinv_apply(cm.pinv_apply(x));
  };
  return o;
}

}  // namespace

TEST_CASE("c_alpha closed forms") {
  // alpha = 1: ((2-1) * 1 * 2^2)^{1/2} = 2
  CHECK(ll_c_alpha(1.0) == doctest::Approx(2.0).epsilon(1e-14));
  const double a = 0.5, e = 2.0 - a;
  const double expected =
      std::pow((2.0 - a) * std::pow(a, a / e) * std::pow(2.0, 2.0 / e), a / 2.0);
  CHECK(ll_c_alpha(a) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(ll_inner_radius(a, 1.0, 1.0) > 0.0);
  CHECK(ll_outer_radius(a, 1.0, 1.0) > 0.0);
}

TEST_CASE("moreau envelope of a quadratic has the closed form") {
  const CameronMartinStructure cm = ll_cm();
  const double a = 0.8, t = 0.3;
  const Objective f = quad_hr(a, cm);
  CounterRng rng(1);
  for (int k = 0; k < 5; ++k) {
    Vector c(cm.rank());
    for (double& v : c) v = rng.next_normal();
    const Vector w = cm.hr_from_coords(c);
    EnvelopeConfig cfg;
    cfg.inner_radius = 3.0 * mkit::norm(c) + 1.0;
    cfg.seed = 5 + k;
    const EnvelopeValue m = moreau_inner(f, w, t, cm, cfg);
    const double expected = a * mkit::dot(c, c) / (1.0 + 2.0 * a * t);
    CHECK(m.value == doctest::Approx(expected).epsilon(1e-7));
    CHECK(m.converged);
  }
}

TEST_CASE("lasry-lions of a quadratic has the closed form") {
  const CameronMartinStructure cm = ll_cm();
  CounterRng rng(2);
  for (double a : {0.5, 2.0})
    for (double t : {0.05, 0.5}) {
      const Objective f = quad_hr(a, cm);
      Vector c(cm.rank());
      for (double& v : c) v = rng.next_normal();
      const Vector x = cm.hr_from_coords(c);
      EnvelopeConfig cfg;
      cfg.inner_radius = cfg.outer_radius = 3.0 * mkit::norm(c) + 1.0;
      cfg.seed = 11;
      const EnvelopeValue s = lasry_lions_S(f, x, t, cm, cfg);
      CHECK(s.value ==
            doctest::Approx(a / (1.0 + a * t) * mkit::dot(c, c)).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("rank-1 solver agrees with the nested grid oracle") {
  const CameronMartinStructure cm = pseudo_inverse(SelfAdjointOp::diagonal({0.7}));
  const Objective f = objective_from(make_cos_cylinder({1.0}, 1.2));
  for (double x0 : {0.0, 1.1})
    for (double t : {0.2, 1.0}) {
      EnvelopeConfig cfg;
      cfg.inner_radius = cfg.outer_radius = 5.0;
      cfg.seed = 3;
      const EnvelopeValue s = lasry_lions_S(f, {x0}, t, cm, cfg);
      const double ref = ll_nested_grid_1d(f, {x0}, t, cm, 5.0, 400);
      CHECK(s.value == doctest::Approx(ref).epsilon(1e-4).scale(1.0));
    }
}

TEST_CASE("holder seminorm estimator brackets the lipschitz constant of cos") {
  const CameronMartinStructure cm = pseudo_inverse(SelfAdjointOp::identity(2));
  const Objective f = objective_from(make_cos_cylinder(basis_vector(2, 0)));
  const HolderWitness w = holder_seminorm(f, 1.0, cm, 6000, 17);
  CHECK(w.seminorm <= 1.0 + 1e-9);  // cos is 1-Lipschitz
  CHECK(w.seminorm >= 0.9);
  CHECK(!w.witnesses.empty());
}

TEST_CASE("bound suite: no violations and sane decay on a smooth function") {
  const CameronMartinStructure cm = ll_cm();
  const Objective f = objective_from(make_cos_cylinder(basis_vector(3, 0)));
  const HolderWitness wit = holder_seminorm(f, 0.5, cm, 2000, 29);
  EnvelopeConfig base;
  base.seed = 31;
  std::vector<Vector> xs = {Vector{0.2, -0.4, 0.9}, Vector{1.0, 0.3, -0.2}};
  const LLBoundReport rep =
      verify_ll_bounds(f, wit, 1.0, {0.1, 0.01}, xs, cm, base);
  CHECK(rep.violations == 0);
  CHECK(rep.rows.size() == 4);
  CHECK(rep.c_alpha == doctest::Approx(ll_c_alpha(0.5)));
  const Table t = rep.to_table();
  CHECK(t.header.size() == 8);
  CHECK(t.rows.size() == 4);
}

TEST_CASE("config validation in the envelope solvers") {
  const CameronMartinStructure cm = ll_cm();
  const Objective f = quad_hr(1.0, cm);
  EnvelopeConfig cfg;  // radii unset
  CHECK_THROWS_AS(moreau_inner(f, Vector(3, 0.0), 0.1, cm, cfg), std::invalid_argument);
  cfg.inner_radius = cfg.outer_radius = 1.0;
  CHECK_THROWS_AS(lasry_lions_S(f, Vector(3, 0.0), -1.0, cm, cfg), std::invalid_argument);
}
