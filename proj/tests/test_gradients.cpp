#include "doctest.h"

#include <cmath>

#include "mkit/gradients.hpp"
#include "mkit/rng.hpp"

using namespace mkit;

namespace {

CameronMartinStructure test_cm() {
  return pseudo_inverse(SelfAdjointOp::rotated({1.5, 0.75, 0.25, 0.0}, 31));
}

}  // namespace

TEST_CASE("battery gradients and hessians agree with finite differences") {
  CounterRng rng(17);
  for (const auto& f : standard_battery(4)) {
    for (int p = 0; p < 10; ++p) {
      Vector x(4), v(4), w(4);
      for (double& u : x) u = 1.2 * rng.next_normal();
      for (double& u : v) u = rng.next_normal();
      for (double& u : w) u = rng.next_normal();
      const double fd = fd_directional(f, x, v);
      const double an = mkit::dot(f.grad_full(x), v);
      CHECK(std::fabs(an - fd) <= 2e-6 * (1.0 + std::fabs(an) + std::fabs(fd)));
      if (f.smoothness >= 2) {
        const double fd2 = fd_second_directional(f, x, v, w);
        const double an2 = mkit::dot(matvec(f.hess_full(x), w), v);
        CHECK(std::fabs(an2 - fd2) <= 2e-4 * (1.0 + std::fabs(an2) + std::fabs(fd2)));
      }
    }
  }
}

TEST_CASE("gradient chain: grad_R = R grad, grad_HR = R grad_R") {
  const CameronMartinStructure cm = test_cm();
  CounterRng rng(18);
  for (const auto& f : standard_battery(4)) {
    Vector x(4);
    for (double& u : x) u = rng.next_normal();
    const Vector g = f.grad_full(x);
    const Vector gr = grad_R(f, x, cm);
    const Vector ghr = grad_HR(f, x, cm);
    CHECK(mkit::norm(gr - cm.R().apply(g)) <= 1e-12 * (1.0 + mkit::norm(g)));
    CHECK(mkit::norm(ghr - cm.R().apply(gr)) <= 1e-12 * (1.0 + mkit::norm(gr)));
    // norm equality between the two subspace gradients
    CHECK(mkit::norm(gr) ==
          doctest::Approx(cm.norm(cm.range_project(ghr))).epsilon(1e-10));
  }
}

TEST_CASE("R-gradient annihilates the kernel") {
  const CameronMartinStructure cm = test_cm();
  Vector vk(4);
  for (std::size_t c = 0; c < 4; ++c) vk[c] = cm.R().frame()(3, c);  // zero eigenvalue row
  CHECK(mkit::norm(cm.R().apply(vk)) <= 1e-12);
  CounterRng rng(19);
  for (const auto& f : standard_battery(4)) {
    Vector x(4);
    for (double& u : x) u = rng.next_normal();
    CHECK(std::fabs(mkit::dot(grad_R(f, x, cm), vk)) <=
          1e-12 * (1.0 + mkit::norm(f.grad_full(x))));
    const MultilinearForm h = hess_R(f, x, cm);
    CHECK(mkit::norm(matvec(h.mat, vk)) <= 1e-12 * (1.0 + frobenius_norm(h.mat)));
  }
}

TEST_CASE("transport is an isometry and maps hess_R to hess_HR") {
  const CameronMartinStructure cm = test_cm();
  const auto f = make_cos_sin_product(basis_vector(4, 0), basis_vector(4, 1));
  CounterRng rng(20);
  for (int p = 0; p < 5; ++p) {
    Vector x(4);
    for (double& u : x) u = rng.next_normal();

    MultilinearForm a0;
    a0.order = 0;
    a0.space = MultilinearForm::Space::ker_perp;
    a0.vec = grad_R(f, x, cm);
    const MultilinearForm t0 = transport_Tn(a0, cm, 0);
    CHECK(form_norm(a0, cm) == doctest::Approx(form_norm(t0, cm)).epsilon(1e-10));
    // T0 grad_R is the H_R gradient
    CHECK(mkit::norm(t0.vec - grad_HR(f, x, cm)) <= 1e-12);

    const MultilinearForm h = hess_R(f, x, cm);
    const MultilinearForm t1 = transport_Tn(h, cm, 1);
    CHECK(form_norm(h, cm) == doctest::Approx(form_norm(t1, cm)).epsilon(1e-10));
    // on range(R) the transported form equals the H_R hessian
    const MultilinearForm hhr = hess_HR(f, x, cm);
    Vector c(cm.rank());
    for (double& u : c) u = rng.next_normal();
    const Vector v = cm.hr_from_coords(c);
    CHECK(mkit::norm(matvec(t1.mat, v) - matvec(hhr.mat, v)) <=
          1e-10 * (1.0 + frobenius_norm(hhr.mat)));
  }
}

TEST_CASE("transport rejects forms with kernel components") {
  const CameronMartinStructure cm = test_cm();
  MultilinearForm bad;
  bad.order = 1;
  bad.space = MultilinearForm::Space::ker_perp;
  bad.mat = Matrix::identity(4);  // acts on the kernel too
  CHECK_THROWS_AS(transport_Tn(bad, cm, 1), std::invalid_argument);
}

TEST_CASE("power iteration norm matches a known singular value") {
  Matrix a(2, 2);
  a(0, 0) = 3.0;
  a(1, 1) = -5.0;
  CHECK(power_iteration_norm(a) == doctest::Approx(5.0).epsilon(1e-9));
}
