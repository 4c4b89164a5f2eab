#include "doctest.h"

#include <cmath>
#include <vector>

#include "mkit/kernels.hpp"
#include "mkit/rng.hpp"

using namespace mkit;

namespace {

std::vector<double> random_array(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<double> v(n);
  for (double& x : v) x = rng.next_normal();
  return v;
}

}  // namespace

TEST_CASE("scalar kernels match naive references") {
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 257u}) {
    const auto a = random_array(n, 10 + n);
    const auto b = random_array(n, 20 + n);
    double dot = 0.0, sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      dot += a[i] * b[i];
      sum += a[i];
      sumsq += a[i] * a[i];
    }
    CHECK(kernels::scalar::dot(a.data(), b.data(), n) == doctest::Approx(dot).epsilon(1e-13));
    CHECK(kernels::scalar::sum(a.data(), n) == doctest::Approx(sum).epsilon(1e-13));
    CHECK(kernels::scalar::sumsq(a.data(), n) == doctest::Approx(sumsq).epsilon(1e-13));

    auto y = b;
    kernels::scalar::axpy(0.75, a.data(), y.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(y[i] == doctest::Approx(b[i] + 0.75 * a[i]));
  }
}

TEST_CASE("scalar matvec matches naive reference") {
  const std::size_t rows = 5, cols = 7;
  const auto a = random_array(rows * cols, 3);
  const auto x = random_array(cols, 4);
  std::vector<double> y(rows), ref(rows, 0.0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) ref[i] += a[i * cols + j] * x[j];
  kernels::scalar::matvec(a.data(), rows, cols, x.data(), y.data());
  for (std::size_t i = 0; i < rows; ++i) CHECK(y[i] == doctest::Approx(ref[i]).epsilon(1e-14));
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!kernels::avx2::available()) return;
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 8u, 15u, 16u, 17u, 255u, 1024u}) {
    const auto a = random_array(n, 100 + n);
    const auto b = random_array(n, 200 + n);
    CHECK(kernels::avx2::dot(a.data(), b.data(), n) ==
          doctest::Approx(kernels::scalar::dot(a.data(), b.data(), n)).epsilon(1e-12));
    CHECK(kernels::avx2::sum(a.data(), n) ==
          doctest::Approx(kernels::scalar::sum(a.data(), n)).epsilon(1e-12));
    CHECK(kernels::avx2::sumsq(a.data(), n) ==
          doctest::Approx(kernels::scalar::sumsq(a.data(), n)).epsilon(1e-12));
    auto ys = b, yv = b;
    kernels::scalar::axpy(-1.3, a.data(), ys.data(), n);
    kernels::avx2::axpy(-1.3, a.data(), yv.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(yv[i] == doctest::Approx(ys[i]).epsilon(1e-13));
    auto ss = a, sv = a;
    kernels::scalar::scale(0.37, ss.data(), n);
    kernels::avx2::scale(0.37, sv.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(sv[i] == doctest::Approx(ss[i]).epsilon(1e-13));
  }
  const std::size_t rows = 9, cols = 33;
  const auto m = random_array(rows * cols, 7);
  const auto x = random_array(cols, 8);
  std::vector<double> ys(rows), yv(rows);
  kernels::scalar::matvec(m.data(), rows, cols, x.data(), ys.data());
  kernels::avx2::matvec(m.data(), rows, cols, x.data(), yv.data());
  for (std::size_t i = 0; i < rows; ++i) CHECK(yv[i] == doctest::Approx(ys[i]).epsilon(1e-12));
}

TEST_CASE("dispatch table is initialized") {
  CHECK((kernels::active_name() == "avx2" || kernels::active_name() == "scalar"));
  const auto a = random_array(33, 1);
  CHECK(kernels::dot(a.data(), a.data(), 33) ==
        doctest::Approx(kernels::scalar::sumsq(a.data(), 33)).epsilon(1e-12));
}

TEST_CASE("counter rng is a pure function of (seed, counter)") {
  CounterRng a(42, 3), b(42, 3);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  CounterRng c(42, 3);
  c.set_counter(50);
  b.set_counter(50);
  CHECK(c.next_normal() == b.next_normal());
  CounterRng d(42, 4);
  d.set_counter(0);
  CHECK(CounterRng(42, 3).next_u64() != d.next_u64());
}

TEST_CASE("normal quantile matches tabulated values") {
  CHECK(CounterRng::normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(CounterRng::normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(CounterRng::normal_quantile(0.841344746068543) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(CounterRng::normal_quantile(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-9));
}
