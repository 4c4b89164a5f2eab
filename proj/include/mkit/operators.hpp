#pragma once

// Self-adjoint operators on a finite-dimensional real Hilbert space, stored
// through their spectral decomposition, and the Cameron-Martin structure
// (pseudo-inverse, kernel projector, subspace inner product) attached to a
// non-negative operator.

#include <cstdint>
#include <string>

#include "mkit/linalg.hpp"

namespace mkit {

// The ambient space: R^n with the Euclidean inner product.
struct FiniteHilbert {
  std::size_t dim;
  explicit FiniteHilbert(std::size_t n) : dim(n) {
    if (n < 1) throw std::invalid_argument("FiniteHilbert: dim must be >= 1");
  }
};

class SelfAdjointOp {
 public:
  // Eigendecomposition of a dense symmetric matrix.  Rejects input whose
  // relative asymmetry exceeds 1e-10.  Eigenvalues with |lambda| below
  // 1e-10 * max|lambda| are truncated to zero and assigned to the kernel.
  static SelfAdjointOp from_dense(const Matrix& a);

  // Directly from a spectral pair; `frame` rows are the eigenvectors.
  static SelfAdjointOp from_spectrum(Vector eigenvalues, Matrix frame);

  static SelfAdjointOp diagonal(const Vector& eigenvalues);
  static SelfAdjointOp identity(std::size_t n);

  // Given eigenvalues in a random orthonormal frame drawn from `seed`.
  static SelfAdjointOp rotated(const Vector& eigenvalues, std::uint64_t seed);

  std::size_t dim() const { return dim_; }
  const Vector& eigenvalues() const { return eigenvalues_; }
  // Row i is the eigenvector for eigenvalues()[i].
  const Matrix& frame() const { return frame_; }

  bool non_negative() const { return non_negative_; }
  bool injective() const { return injective_; }
  double trace() const { return trace_; }
  double op_norm() const { return op_norm_; }

  Vector apply(const Vector& x) const;
  Matrix dense() const;

  // f applied eigenvalue-wise in the same frame (used for sqrt, squares).
  SelfAdjointOp spectral_map(double (*f)(double)) const;
  SelfAdjointOp sqrt() const;  // requires non_negative

  // coordinates in the eigenframe and back
  Vector to_eigen_coords(const Vector& x) const;    // U^T x
  Vector from_eigen_coords(const Vector& c) const;  // U c

  std::string to_json() const;
  static SelfAdjointOp from_json(const std::string& text);

 private:
  SelfAdjointOp() = default;
  void finalize();

  std::size_t dim_ = 0;
  Vector eigenvalues_;
  Matrix frame_;  // rows = eigenvectors
  bool non_negative_ = false;
  bool injective_ = false;
  double trace_ = 0.0;
  double op_norm_ = 0.0;
};

// Random orthonormal n x n frame (rows orthonormal), from Gaussian + QR.
Matrix random_orthonormal(std::size_t n, std::uint64_t seed);

// H_R = range(R) with inner product <pinv x, pinv y>.  Built by
// pseudo_inverse() below.
class CameronMartinStructure {
 public:
  explicit CameronMartinStructure(SelfAdjointOp r);

  const SelfAdjointOp& R() const { return r_; }
  std::size_t dim() const { return r_.dim(); }
  std::size_t rank() const { return range_idx_.size(); }
  bool degenerate() const { return rank() < dim(); }

  Vector pinv_apply(const Vector& x) const;       // R^{-1}, zero on ker R
  Vector kernel_project(const Vector& x) const;   // P_{ker R}
  Vector range_project(const Vector& x) const;    // Id - P_{ker R}

  // <x, y>_{H_R}; both arguments must lie in range(R) up to the relative
  // kernel-component tolerance 1e-10.
  double inner(const Vector& x, const Vector& y) const;
  double norm(const Vector& x) const;

  // Orthonormal basis of H_R: b_j = lambda_j u_j over the positive part of
  // the spectrum.  hr_from_coords maps coordinates c to sum_j c_j b_j;
  // hr_to_coords inverts it on range(R).
  Vector hr_from_coords(const Vector& c) const;
  Vector hr_to_coords(const Vector& x) const;

  // indices (into the eigen frame) of the nonzero eigenvalues
  const std::vector<std::size_t>& range_indices() const { return range_idx_; }

 private:
  void check_in_range(const Vector& x, const char* who) const;

  SelfAdjointOp r_;
  std::vector<std::size_t> range_idx_;
};

// Spectral pseudo-inverse of a self-adjoint R.
CameronMartinStructure pseudo_inverse(const SelfAdjointOp& r);

inline double cm_inner(const CameronMartinStructure& cm, const Vector& x, const Vector& y) {
  return cm.inner(x, y);
}

}  // namespace mkit
