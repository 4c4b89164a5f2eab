#pragma once

// Probabilists' Hermite polynomials (orthonormal under the standard normal
// weight) and Gauss-Hermite quadrature for that weight.

#include "mkit/linalg.hpp"

namespace mkit {

// values of the orthonormal polynomials H^_0 .. H^_N at x
// (H^_k = He_k / sqrt(k!), E[H^_j H^_k] = delta_jk under N(0,1))
Vector hermite_orthonormal_values(int degree_cap, double x);

struct GaussHermiteRule {
  Vector nodes;
  Vector weights;  // sum to 1 (normal weight)
};

// Golub-Welsch on the Jacobi matrix of the He recurrence; exact for
// polynomials of degree <= 2*count - 1 against the N(0,1) weight.
GaussHermiteRule gauss_hermite(int count);

// multi-indices alpha in N^m with |alpha| <= degree_cap, lexicographic
std::vector<std::vector<int>> multi_indices(int m, int degree_cap);

}  // namespace mkit
