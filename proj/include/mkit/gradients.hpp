#pragma once

// The two subspace gradients (the R-gradient and the H_R-gradient), their
// second-order versions, and the transport isometry between multilinear
// forms on (ker R)^perp and on H_R.

#include "mkit/cylinder.hpp"
#include "mkit/operators.hpp"

namespace mkit {

struct Tensor3 {
  std::size_t n = 0;
  std::vector<double> data;  // [i][j][k] -> ((i*n)+j)*n+k

  Tensor3() = default;
  explicit Tensor3(std::size_t dim) : n(dim), data(dim * dim * dim, 0.0) {}
  double& at(std::size_t i, std::size_t j, std::size_t k) { return data[(i * n + j) * n + k]; }
  double at(std::size_t i, std::size_t j, std::size_t k) const {
    return data[(i * n + j) * n + k];
  }
  // A(v1, v2) as a vector
  Vector apply(const Vector& v1, const Vector& v2) const;
};

// A k-argument multilinear form with vector coefficients, together with a
// tag naming which inner-product structure its norm is taken in.
struct MultilinearForm {
  enum class Space { ambient, ker_perp, hr };

  int order = 0;  // number of argument slots: 0, 1 or 2
  Space space = Space::ambient;
  Vector vec;   // order 0
  Matrix mat;   // order 1: v -> mat * v (ambient coordinates)
  Tensor3 ten;  // order 2
};

// Largest singular value of a dense matrix by power iteration on A^T A,
// with random restarts to break spectral ties.
double power_iteration_norm(const Matrix& a, double tol = 1e-10, int restarts = 10,
                            std::uint64_t seed = 1234);

// Operator norm of the form in its tagged space (power iteration; order 2
// uses alternating iteration over the two slots).
double form_norm(const MultilinearForm& a, const CameronMartinStructure& cm,
                 double tol = 1e-10, int restarts = 10);

Vector grad_R(const CylinderFunction& f, const Vector& x, const CameronMartinStructure& cm);
Vector grad_HR(const CylinderFunction& f, const Vector& x, const CameronMartinStructure& cm);

// v -> R * Hess(x) * R v, tagged as a form on (ker R)^perp
MultilinearForm hess_R(const CylinderFunction& f, const Vector& x,
                       const CameronMartinStructure& cm);

// v -> R^2 * Hess(x) * v on H_R (the second H_R-gradient)
MultilinearForm hess_HR(const CylinderFunction& f, const Vector& x,
                        const CameronMartinStructure& cm);

// (T_n A)(v_1,...,v_n) = R A(pinv v_1, ..., pinv v_n).  A must be supported
// on (ker R)^perp in every slot; n is the number of argument slots.
MultilinearForm transport_Tn(const MultilinearForm& a, const CameronMartinStructure& cm, int n);

}  // namespace mkit
