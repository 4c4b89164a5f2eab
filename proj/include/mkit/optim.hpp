#pragma once

// Multistart projected gradient descent with backtracking line search on a
// Euclidean ball.  Used by the Lasry-Lions engine in range(R) coordinates.

#include <cstdint>
#include <functional>

#include "mkit/linalg.hpp"

namespace mkit {

struct OptimConfig {
  double radius = 1.0;       // feasible set: ||x|| <= radius
  int multistarts = 8;       // origin start plus (multistarts - 1) random ones
  int max_iterations = 400;
  double step_tol = 1e-8;
  double value_tol = 1e-10;
  std::uint64_t seed = 0;
};

struct OptimResult {
  Vector x;
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

OptimResult minimize_on_ball(const std::function<double(const Vector&)>& f,
                             const std::function<Vector(const Vector&)>& grad,
                             std::size_t dim, const OptimConfig& cfg);

}  // namespace mkit
