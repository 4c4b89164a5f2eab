#include "doctest.h"

#include <cmath>

#include "mkit/malliavin.hpp"
#include "mkit/rng.hpp"

using namespace mkit;

namespace {

SelfAdjointOp test_q() { return SelfAdjointOp::rotated({1.0, 0.5, 0.25}, 41); }

std::vector<Vector> test_z(std::size_t m) {
  const Matrix frame = random_orthonormal(3, 43);
  std::vector<Vector> z;
  for (std::size_t i = 0; i < m; ++i) {
    Vector zi(3);
    for (std::size_t c = 0; c < 3; ++c) zi[c] = frame(i, c);
    z.push_back(std::move(zi));
  }
  return z;
}

}  // namespace

TEST_CASE("orthonormalize produces an orthonormal family and rejects dependence") {
  auto v = orthonormalize({{1.0, 1.0, 0.0}, {1.0, 0.0, 0.0}});
  CHECK(mkit::norm(v[0]) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mkit::norm(v[1]) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::fabs(mkit::dot(v[0], v[1])) <= 1e-14);
  CHECK_THROWS_AS(orthonormalize({{1.0, 0.0}, {2.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("constructor rejects non-orthonormal directions") {
  CHECK_THROWS_AS(
      SmoothRandomVariable(
          "bad", [](const Vector& u) { return u[0]; },
          [](const Vector&) { return Vector{1.0}; }, {{1.0, 1.0, 0.0}}, test_q(),
          CylinderFunction::Growth::polynomial, 1),
      std::invalid_argument);
}

TEST_CASE("orthonormal hermite basis: explicit low orders and recurrence") {
  const double x = 0.7;
  const auto h = hermite_orthonormal_values(5, x);
  CHECK(h[0] == doctest::Approx(1.0));
  CHECK(h[1] == doctest::Approx(x));
  CHECK(h[2] == doctest::Approx((x * x - 1.0) / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(h[3] == doctest::Approx((x * x * x - 3.0 * x) / std::sqrt(6.0)).epsilon(1e-14));
}

TEST_CASE("gauss-hermite quadrature integrates gaussian moments exactly") {
  const auto [nodes, weights] = gauss_hermite(8);
  double m0 = 0.0, m2 = 0.0, m4 = 0.0, m6 = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    m0 += weights[i];
    m2 += weights[i] * nodes[i] * nodes[i];
    m4 += weights[i] * std::pow(nodes[i], 4);
    m6 += weights[i] * std::pow(nodes[i], 6);
  }
  CHECK(m0 == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(m2 == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(m4 == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(m6 == doctest::Approx(15.0).epsilon(1e-12));
}

TEST_CASE("chaos expansion of W^2 has the closed-form coefficients") {
  SmoothRandomVariable f(
      "W^2", [](const Vector& u) { return u[0] * u[0]; },
      [](const Vector& u) { return Vector{2.0 * u[0]}; }, test_z(1), test_q(),
      CylinderFunction::Growth::polynomial, 2);
  const ChaosExpansion ch = chaos_project(f, 4);
  CHECK(ch.coeff({0}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ch.coeff({1}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(ch.coeff({2}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(ch.coeff({3}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::fabs(ch.tail_gap) <= 1e-10);
}

TEST_CASE("chaos expansion of cos(W) matches the closed-form oracle") {
  SmoothRandomVariable f(
      "cos", [](const Vector& u) { return std::cos(u[0]); },
      [](const Vector& u) { return Vector{-std::sin(u[0])}; }, test_z(1), test_q(),
      CylinderFunction::Growth::bounded);
  const ChaosExpansion ch = chaos_project(f, 12);
  for (std::size_t i = 0; i < ch.alphas.size(); ++i) {
    const int a = ch.alphas[i][0];
    double target = 0.0;
    if (a % 2 == 0) {
      double fact = 1.0;
      for (int k = 2; k <= a; ++k) fact *= k;
      target = ((a / 2) % 2 == 0 ? 1.0 : -1.0) * std::exp(-0.5) / std::sqrt(fact);
    }
    CHECK(ch.coeffs[i] == doctest::Approx(target).epsilon(1e-6).scale(1.0));
  }
  // E[ |D cos(W)|^2 ] = E[sin^2(W)] = (1 - e^{-2})/2
  const DomainCheck dc = domain_check(f, 12);
  CHECK(dc.lhs == doctest::Approx(0.5 * (1.0 - std::exp(-2.0))).epsilon(1e-8));
  CHECK(dc.lhs == doctest::Approx(dc.rhs).epsilon(1e-6));
}

TEST_CASE("domain identity is quadrature-exact for polynomials") {
  SmoothRandomVariable f(
      "u^2 v", [](const Vector& u) { return u[0] * u[0] * u[1]; },
      [](const Vector& u) { return Vector{2.0 * u[0] * u[1], u[0] * u[0]}; }, test_z(2),
      test_q(), CylinderFunction::Growth::polynomial, 3);
  const DomainCheck dc = domain_check(f, 5);
  CHECK(std::fabs(dc.lhs - dc.rhs) <= 1e-10 * (1.0 + std::fabs(dc.lhs)));
}

TEST_CASE("the two derivative pictures are related by Q^{1/2}") {
  const SelfAdjointOp q = test_q();
  SmoothRandomVariable f(
      "mixed", [](const Vector& u) { return std::sin(u[0]) * u[1]; },
      [](const Vector& u) {
        return Vector{std::cos(u[0]) * u[1], std::sin(u[0])};
      },
      test_z(2), q, CylinderFunction::Growth::polynomial);
  const SelfAdjointOp qs = q.sqrt();
  CounterRng rng(3);
  for (int k = 0; k < 10; ++k) {
    Vector xi(3);
    for (double& v : xi) v = rng.next_normal();
    const Vector cdp = f.derivative(xi, Picture::cdp);
    const Vector gross = f.derivative(xi, Picture::gross);
    CHECK(mkit::norm(gross - qs.apply(cdp)) <= 1e-12 * (1.0 + mkit::norm(cdp)));
  }
}

TEST_CASE("integration by parts holds within monte-carlo error") {
  SmoothRandomVariable f(
      "cos", [](const Vector& u) { return std::cos(u[0]); },
      [](const Vector& u) { return Vector{-std::sin(u[0])}; }, test_z(1), test_q(),
      CylinderFunction::Growth::bounded);
  const IbpResult r = ibp_check(f, test_z(1)[0], 200000, 99, Picture::cdp);
  CHECK(std::fabs(r.z_score) <= 4.0);
  CHECK(r.std_error > 0.0);
}

TEST_CASE("sobolev 1,2 norm of a linear functional") {
  SmoothRandomVariable f(
      "W", [](const Vector& u) { return u[0]; },
      [](const Vector&) { return Vector{1.0}; }, test_z(1), test_q(),
      CylinderFunction::Growth::polynomial, 1);
  // E[W^2] + E[|DW|^2] = 1 + |z|^2 = 2 in both pictures
  const double cdp = sobolev_norm_p(f, 2.0, Picture::cdp, 200000, 7);
  const double gross = sobolev_norm_p(f, 2.0, Picture::gross, 200000, 7);
  CHECK(cdp == doctest::Approx(2.0).epsilon(0.05));
  CHECK(cdp == doctest::Approx(gross).epsilon(1e-10));
}
