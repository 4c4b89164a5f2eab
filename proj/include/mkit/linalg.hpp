#pragma once

// Thin vector/matrix helpers on top of the kernel layer.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mkit/kernels.hpp"

namespace mkit {

using Vector = std::vector<double>;

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
};

inline double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  return kernels::dot(a.data(), b.data(), a.size());
}

inline double norm(const Vector& a) {
  return std::sqrt(kernels::sumsq(a.data(), a.size()));
}

inline Vector matvec(const Matrix& m, const Vector& x) {
  if (m.cols != x.size()) throw std::invalid_argument("matvec: dimension mismatch");
  Vector y(m.rows);
  kernels::matvec(m.data.data(), m.rows, m.cols, x.data(), y.data());
  return y;
}

inline Vector operator+(const Vector& a, const Vector& b) {
  Vector r = a;
  kernels::axpy(1.0, b.data(), r.data(), r.size());
  return r;
}

inline Vector operator-(const Vector& a, const Vector& b) {
  Vector r = a;
  kernels::axpy(-1.0, b.data(), r.data(), r.size());
  return r;
}

inline Vector operator*(double a, const Vector& x) {
  Vector r = x;
  kernels::scale(a, r.data(), r.size());
  return r;
}

inline Vector& operator+=(Vector& a, const Vector& b) {
  kernels::axpy(1.0, b.data(), a.data(), a.size());
  return a;
}

inline Vector axpy(double a, const Vector& x, Vector y) {
  kernels::axpy(a, x.data(), y.data(), y.size());
  return y;
}

inline Vector basis_vector(std::size_t n, std::size_t i) {
  Vector e(n, 0.0);
  e[i] = 1.0;
  return e;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matmul: dimension mismatch");
  Matrix c(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = a(i, k);
      if (aik != 0.0)
        kernels::axpy(aik, &b.data[k * b.cols], &c.data[i * c.cols], b.cols);
    }
  return c;
}

inline double frobenius_norm(const Matrix& m) {
  return std::sqrt(kernels::sumsq(m.data.data(), m.data.size()));
}

}  // namespace mkit
