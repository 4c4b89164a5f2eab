#include "mkit/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define MKIT_X86 1
#include <immintrin.h>
#else
#define MKIT_X86 0
#endif

namespace mkit::kernels::avx2 {

#if MKIT_X86

bool available() { return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"); }

namespace {
inline double hsum(__m256d v) {
  // (v0+v1) + (v2+v3), matching the scalar accumulator combine
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d pair = _mm_add_pd(lo, hi);  // (v0+v2, v1+v3)
  return _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
}
}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
  // lanes hold (s0,s1,s2,s3); combine as (s0+s1)+(s2+s3)
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

double sum(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; i < n; ++i) s += a[i];
  return s;
}

double sumsq(const double* a, std::size_t n) { return dot(a, a, n); }

void axpy(double a, const double* x, double* y, std::size_t n) {
  __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void scale(double a, double* x, std::size_t n) {
  __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void matvec(const double* A, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = dot(A + r * cols, x, cols);
}

#else  // non-x86: scalar fallback only

bool available() { return false; }
double dot(const double* a, const double* b, std::size_t n) { return scalar::dot(a, b, n); }
double sum(const double* a, std::size_t n) { return scalar::sum(a, n); }
double sumsq(const double* a, std::size_t n) { return scalar::sumsq(a, n); }
void axpy(double a, const double* x, double* y, std::size_t n) { scalar::axpy(a, x, y, n); }
void scale(double a, double* x, std::size_t n) { scalar::scale(a, x, n); }
void matvec(const double* A, std::size_t rows, std::size_t cols, const double* x, double* y) {
  scalar::matvec(A, rows, cols, x, y);
}

#endif

}  // namespace mkit::kernels::avx2
