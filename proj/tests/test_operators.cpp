#include "doctest.h"

#include <cmath>

#include "mkit/gaussian.hpp"
#include "mkit/operators.hpp"
#include "mkit/rng.hpp"

using namespace mkit;

TEST_CASE("from_dense rejects asymmetric input") {
  Matrix m(2, 2);
  m(0, 0) = 1.0;
  m(0, 1) = 0.5;
  m(1, 0) = 0.5 + 1e-6;
  m(1, 1) = 2.0;
  CHECK_THROWS_AS(SelfAdjointOp::from_dense(m), std::invalid_argument);
}

TEST_CASE("tiny eigenvalues are truncated into the kernel") {
  const SelfAdjointOp r = SelfAdjointOp::diagonal({1.0, 1e-14, 0.5});
  CHECK_FALSE(r.injective());
  const CameronMartinStructure cm = pseudo_inverse(r);
  CHECK(cm.rank() == 2);
  CHECK(cm.degenerate());
}

TEST_CASE("pseudo-inverse identities on randomized operators") {
  CounterRng rng(9001);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 2 + trial % 6;
    Vector ev(d);
    for (double& v : ev) v = 2.0 * rng.next_uniform() - 0.5;  // mixed signs
    if (trial % 2) ev[trial % d] = 0.0;
    const SelfAdjointOp r = SelfAdjointOp::rotated(ev, rng.next_u64());
    const CameronMartinStructure cm = pseudo_inverse(r);
    for (int k = 0; k < 5; ++k) {
      Vector x(d);
      for (double& v : x) v = rng.next_normal();
      // R pinv R x = R x
      const Vector lhs = r.apply(cm.pinv_apply(r.apply(x)));
      const Vector rhs = r.apply(x);
      CHECK(mkit::norm(lhs - rhs) <= 1e-12 * (1.0 + mkit::norm(rhs)));
      // pinv R x = x - P_ker x
      const Vector lhs2 = cm.pinv_apply(r.apply(x));
      const Vector rhs2 = x - cm.kernel_project(x);
      CHECK(mkit::norm(lhs2 - rhs2) <= 1e-12 * (1.0 + mkit::norm(x)));
    }
  }
}

TEST_CASE("H_R inner product and embedding bound") {
  const SelfAdjointOp r = SelfAdjointOp::rotated({2.0, 1.0, 0.25, 0.0}, 77);
  const CameronMartinStructure cm = pseudo_inverse(r);
  CounterRng rng(5);
  for (int k = 0; k < 20; ++k) {
    Vector c(cm.rank());
    for (double& v : c) v = rng.next_normal();
    const Vector x = cm.hr_from_coords(c);
    // coordinates round-trip
    const Vector back = cm.hr_to_coords(x);
    CHECK(mkit::norm(back - c) <= 1e-12 * (1.0 + mkit::norm(c)));
    // |x|_HR agrees with the coordinate norm
    CHECK(cm.norm(x) == doctest::Approx(mkit::norm(c)).epsilon(1e-12));
    // embedding |x|_H <= |R| |x|_HR
    CHECK(mkit::norm(x) <= r.op_norm() * cm.norm(x) * (1.0 + 1e-12));
  }
}

TEST_CASE("H_R inner product rejects vectors outside the range") {
  const SelfAdjointOp r = SelfAdjointOp::diagonal({1.0, 0.0});
  const CameronMartinStructure cm = pseudo_inverse(r);
  CHECK_THROWS_AS(cm.norm({0.0, 1.0}), std::invalid_argument);
  CHECK(cm.norm({3.0, 0.0}) == doctest::Approx(3.0));
}

TEST_CASE("json round trip preserves the spectral data") {
  const SelfAdjointOp r = SelfAdjointOp::rotated({1.5, 0.5, 0.0}, 11);
  const SelfAdjointOp back = SelfAdjointOp::from_json(r.to_json());
  CounterRng rng(6);
  for (int k = 0; k < 5; ++k) {
    Vector x(3);
    for (double& v : x) v = rng.next_normal();
    CHECK(mkit::norm(r.apply(x) - back.apply(x)) <= 1e-12);
  }
}

TEST_CASE("random orthonormal frames are orthonormal") {
  const Matrix u = random_orthonormal(6, 99);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      double d = 0.0;
      for (std::size_t c = 0; c < 6; ++c) d += u(i, c) * u(j, c);
      CHECK(d == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("sampler covariance approximates Q") {
  const SelfAdjointOp q = SelfAdjointOp::rotated({1.0, 0.5, 0.25}, 13);
  GaussianSampler s(q, 2024);
  const std::size_t count = 200000;
  Matrix cov(3, 3);
  for (std::size_t k = 0; k < count; ++k) {
    const Vector x = s.sample();
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) cov(i, j) += x[i] * x[j];
  }
  const Matrix qd = q.dense();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(cov(i, j) / count == doctest::Approx(qd(i, j)).epsilon(0.05).scale(1.0));
}

TEST_CASE("white noise isometry and degenerate behaviour") {
  const SelfAdjointOp q = SelfAdjointOp::rotated({1.0, 0.25}, 3);
  GaussianSampler s(q, 55);
  Vector z{1.0, 0.0};
  double m2 = 0.0;
  const std::size_t count = 100000;
  for (std::size_t k = 0; k < count; ++k) {
    const double w = white_noise(q, z, s.sample());
    m2 += w * w;
  }
  CHECK(m2 / count == doctest::Approx(1.0).epsilon(0.05));

  const SelfAdjointOp qd = SelfAdjointOp::diagonal({1.0, 0.0});
  CHECK_THROWS_AS(white_noise(qd, z, z), std::invalid_argument);
  // hat is defined on the range of Q^{1/2} even when Q is degenerate
  CHECK(hat(qd, {0.5, 0.0}, {1.0, 0.0}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(hat(qd, {0.0, 1.0}, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("deterministic shard access matches streaming") {
  const SelfAdjointOp q = SelfAdjointOp::diagonal({1.0, 2.0});
  GaussianSampler a(q, 7), b(q, 7);
  (void)a.sample();
  const Vector second = a.sample();
  const Vector direct = b.sample_at(0, 1);
  CHECK(mkit::norm(second - direct) == 0.0);
}
