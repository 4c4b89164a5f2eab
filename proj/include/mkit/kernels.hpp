#pragma once

// Data-parallel inner loops used by the rest of the library.
//
// Every kernel exists in a scalar reference form and, on x86-64, an AVX2
// form.  The active variant is picked once at startup via cpuid; the
// environment variable MKIT_SIMD=scalar|avx2 overrides the choice (useful
// for equivalence testing).  Both variants use a fixed reduction order
// (four partial accumulators combined left to right), so results are
// reproducible for a given variant.

#include <cstddef>
#include <string_view>

namespace mkit::kernels {

struct Ops {
  double (*dot)(const double*, const double*, std::size_t);
  double (*sum)(const double*, std::size_t);
  double (*sumsq)(const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);  // y += a*x
  void (*scale)(double, double*, std::size_t);                // x *= a
  // y = A x, A row-major (rows x cols)
  void (*matvec)(const double*, std::size_t, std::size_t, const double*, double*);
};

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double sumsq(const double* a, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
void matvec(const double* A, std::size_t rows, std::size_t cols, const double* x, double* y);
}  // namespace scalar

namespace avx2 {
bool available();
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double sumsq(const double* a, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scale(double a, double* x, std::size_t n);
void matvec(const double* A, std::size_t rows, std::size_t cols, const double* x, double* y);
}  // namespace avx2

// Active dispatch table (initialized on first use).
const Ops& active();
std::string_view active_name();

inline double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }
inline double sum(const double* a, std::size_t n) { return active().sum(a, n); }
inline double sumsq(const double* a, std::size_t n) { return active().sumsq(a, n); }
inline void axpy(double a, const double* x, double* y, std::size_t n) { active().axpy(a, x, y, n); }
inline void scale(double a, double* x, std::size_t n) { active().scale(a, x, n); }
inline void matvec(const double* A, std::size_t rows, std::size_t cols, const double* x,
                   double* y) {
  active().matvec(A, rows, cols, x, y);
}

}  // namespace mkit::kernels
