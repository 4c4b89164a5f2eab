#include "mkit/optim.hpp"

#include <cmath>

#include "mkit/rng.hpp"

namespace mkit {

namespace {

void project_ball(Vector& x, double radius) {
  const double n = mkit::norm(x);
  if (n > radius) kernels::scale(radius / n, x.data(), x.size());
}

OptimResult descend(const std::function<double(const Vector&)>& f,
                    const std::function<Vector(const Vector&)>& grad, Vector x,
                    const OptimConfig& cfg) {
  project_ball(x, cfg.radius);
  double fx = f(x);
  double step = 1.0;
  bool converged = false;
  int it = 0;
  for (; it < cfg.max_iterations; ++it) {
    const Vector g = grad(x);
    // Armijo backtracking on the projected step
    bool moved = false;
    for (int bt = 0; bt < 40; ++bt) {
      Vector trial = axpy(-step, g, x);
      project_ball(trial, cfg.radius);
      const Vector delta = trial - x;
      const double dn = mkit::norm(delta);
      if (dn <= cfg.step_tol * (1.0 + mkit::norm(x))) break;
      const double ft = f(trial);
      if (ft <= fx - 1e-4 * (-mkit::dot(g, delta))) {
        // descent accepted when the Armijo model decrease is met
        if (std::fabs(fx - ft) <= cfg.value_tol * (1.0 + std::fabs(fx)) &&
            dn <= std::sqrt(cfg.step_tol)) {
          x = std::move(trial);
          fx = ft;
          converged = true;
        } else {
          x = std::move(trial);
          fx = ft;
          step *= 1.6;
        }
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (converged) break;
    if (!moved) {
      // no acceptable step: stationary (or boundary-blocked) point
      converged = true;
      break;
    }
  }
  return {std::move(x), fx, converged, it};
}

}  // namespace

OptimResult minimize_on_ball(const std::function<double(const Vector&)>& f,
                             const std::function<Vector(const Vector&)>& grad,
                             std::size_t dim, const OptimConfig& cfg) {
  OptimResult best = descend(f, grad, Vector(dim, 0.0), cfg);
  CounterRng rng(cfg.seed, /*stream=*/0x5eed);
  for (int s = 1; s < cfg.multistarts; ++s) {
    Vector x0(dim);
    for (double& v : x0) v = rng.next_normal();
    const double n = mkit::norm(x0);
    if (n > 0.0) {
      // uniform radius fraction inside the ball
      const double frac = std::pow(rng.next_uniform(), 1.0 / static_cast<double>(dim));
      kernels::scale(cfg.radius * frac / n, x0.data(), x0.size());
    }
    OptimResult r = descend(f, grad, std::move(x0), cfg);
    if (r.value < best.value) best = std::move(r);
  }
  return best;
}

}  // namespace mkit
