#include "mkit/lasry_lions.hpp"

#include <cmath>
#include <memory>

#include "mkit/rng.hpp"

namespace mkit {

Objective objective_from(const CylinderFunction& f) {
  Objective o;
  o.name = f.name;
  o.value = [f](const Vector& x) { return f.evaluate(x); };
  if (f.smoothness >= 1 && f.grad_base)
    o.grad = [f](const Vector& x) { return f.grad_full(x); };
  return o;
}

double ll_c_alpha(double alpha) {
  const double e = 2.0 - alpha;
  return std::pow((2.0 - alpha) * std::pow(alpha, alpha / e) * std::pow(2.0, 2.0 / e),
                  alpha / 2.0);
}

double ll_inner_radius(double alpha, double seminorm, double t) {
  const double e = 2.0 - alpha;
  const double b2 = (2.0 - alpha) * std::pow(alpha, alpha / e) * std::pow(2.0, 2.0 / e) *
                    std::pow(seminorm, 2.0 / e) * std::pow(t, 2.0 / e);
  return std::sqrt(b2);
}

double ll_outer_radius(double alpha, double seminorm, double t) {
  const double e = 2.0 - alpha;
  const double b2 =
      2.0 * ll_c_alpha(alpha) * std::pow(seminorm, 2.0 / e) * std::pow(t, 2.0 / e);
  return std::sqrt(b2);
}

namespace {

// gradient of f along an H_R basis vector, analytic when available
double dir_derivative(const Objective& f, const Vector& p, const Vector& b) {
  if (f.grad) return mkit::dot(f.grad(p), b);
  const double s = 6.055454452393343e-06 * (1.0 + mkit::norm(p));
  return (f.value(axpy(s, b, p)) - f.value(axpy(-s, b, p))) / (2.0 * s);
}

std::vector<Vector> hr_basis(const CameronMartinStructure& cm) {
  std::vector<Vector> b;
  for (std::size_t j = 0; j < cm.rank(); ++j)
    b.push_back(cm.hr_from_coords(basis_vector(cm.rank(), j)));
  return b;
}

}  // namespace

EnvelopeValue moreau_inner(const Objective& f, const Vector& w, double t,
                           const CameronMartinStructure& cm, const EnvelopeConfig& cfg) {
  if (t <= 0.0) throw std::invalid_argument("moreau_inner: t must be positive");
  if (cfg.inner_radius <= 0.0)
    throw std::invalid_argument("moreau_inner: inner search radius not set");
  const auto basis = hr_basis(cm);
  const std::size_t d = cm.rank();

  auto point = [&](const Vector& c) {
    Vector p = w;
    for (std::size_t j = 0; j < d; ++j)
      kernels::axpy(c[j], basis[j].data(), p.data(), p.size());
    return p;
  };
  auto value = [&](const Vector& c) {
    return f.value(point(c)) + kernels::sumsq(c.data(), d) / (2.0 * t);
  };
  auto grad = [&](const Vector& c) {
    const Vector p = point(c);
    Vector g(d);
    if (f.grad) {
      const Vector gf = f.grad(p);
      for (std::size_t j = 0; j < d; ++j) g[j] = mkit::dot(gf, basis[j]) + c[j] / t;
    } else {
      for (std::size_t j = 0; j < d; ++j) g[j] = dir_derivative(f, p, basis[j]) + c[j] / t;
    }
    return g;
  };

  OptimConfig oc;
  oc.radius = cfg.inner_radius;
  oc.multistarts = cfg.inner_multistarts;
  oc.max_iterations = cfg.max_iterations;
  oc.step_tol = cfg.step_tol;
  oc.value_tol = cfg.value_tol;
  oc.seed = cfg.seed ^ 0x1177;
  OptimResult r = minimize_on_ball(value, grad, d, oc);
  return {r.value, std::move(r.x), r.converged};
}

EnvelopeValue lasry_lions_S(const Objective& f, const Vector& x, double t,
                            const CameronMartinStructure& cm, const EnvelopeConfig& cfg) {
  if (t <= 0.0) throw std::invalid_argument("lasry_lions_S: t must be positive");
  if (cfg.outer_radius <= 0.0)
    throw std::invalid_argument("lasry_lions_S: outer search radius not set");
  const auto basis = hr_basis(cm);
  const std::size_t d = cm.rank();

  EnvelopeConfig inner_cfg = cfg;
  inner_cfg.inner_multistarts = std::max(2, cfg.inner_multistarts / 2);

  auto shifted = [&](const Vector& c) {
    Vector w = x;
    for (std::size_t j = 0; j < d; ++j)
      kernels::axpy(-c[j], basis[j].data(), w.data(), w.size());
    return w;
  };

  // inner envelope solved once per outer iterate; cache shared between the
  // value and gradient callbacks
  struct Cache {
    Vector c;
    EnvelopeValue inner;
    bool valid = false;
    bool all_converged = true;
  };
  auto cache = std::make_shared<Cache>();
  auto solve_inner = [&, cache](const Vector& c) -> const EnvelopeValue& {
    if (!cache->valid || cache->c != c) {
      cache->inner = moreau_inner(f, shifted(c), t, cm, inner_cfg);
      cache->c = c;
      cache->valid = true;
      if (!cache->inner.converged) cache->all_converged = false;
    }
    return cache->inner;
  };

  auto neg_value = [&, cache](const Vector& c) {
    const EnvelopeValue& inner = solve_inner(c);
    return -(inner.value - kernels::sumsq(c.data(), d) / t);
  };
  auto neg_grad = [&, cache](const Vector& c) {
    const EnvelopeValue& inner = solve_inner(c);
    Vector g(d);
    // d/dc_j of the Moreau envelope at w = x - h(c) is k*_j / t
    for (std::size_t j = 0; j < d; ++j) g[j] = (2.0 * c[j] - inner.minimizer[j]) / t;
    return g;
  };

  OptimConfig oc;
  oc.radius = cfg.outer_radius;
  oc.multistarts = cfg.multistarts;
  oc.max_iterations = cfg.max_iterations;
  oc.step_tol = cfg.step_tol;
  oc.value_tol = cfg.value_tol;
  oc.seed = cfg.seed ^ 0x2288;
  OptimResult r = minimize_on_ball(neg_value, neg_grad, d, oc);

  // refine the inner value at the final h with the full multistart budget
  EnvelopeValue final_inner = moreau_inner(f, shifted(r.x), t, cm, cfg);
  EnvelopeValue out;
  out.minimizer = std::move(r.x);
  out.value = final_inner.value - kernels::sumsq(out.minimizer.data(), d) / t;
  out.converged = r.converged && final_inner.converged && cache->all_converged;
  return out;
}

double ll_nested_grid_1d(const Objective& f, const Vector& x, double t,
                         const CameronMartinStructure& cm, double radius,
                         std::size_t steps) {
  if (cm.rank() != 1)
    throw std::invalid_argument("ll_nested_grid_1d: needs a rank-1 structure");
  const Vector b = cm.hr_from_coords({1.0});

  // refine a 1-D grid search three times around the incumbent
  auto grid_opt = [&](const std::function<double(double)>& g, double center,
                      double half_width) {
    double best_c = center, best_v = g(center);
    double lo = center - half_width, hi = center + half_width, span = half_width;
    for (int level = 0; level < 3; ++level) {
      for (std::size_t i = 0; i <= steps; ++i) {
        const double c = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps);
        const double v = g(c);
        if (v < best_v) {
          best_v = v;
          best_c = c;
        }
      }
      span = 2.0 * (hi - lo) / static_cast<double>(steps);
      lo = best_c - span;
      hi = best_c + span;
    }
    return best_v;
  };

  auto inner = [&](double ch) {
    const Vector w = axpy(-ch, b, x);
    auto g = [&](double ck) {
      return f.value(axpy(ck, b, w)) + ck * ck / (2.0 * t);
    };
    return grid_opt(g, 0.0, radius);
  };
  auto outer_neg = [&](double ch) { return -(inner(ch) - ch * ch / t); };
  return -grid_opt(outer_neg, 0.0, radius);
}

HolderWitness holder_seminorm(const Objective& f, double alpha,
                              const CameronMartinStructure& cm, std::size_t samples,
                              std::uint64_t seed) {
  if (alpha <= 0.0 || alpha > 1.0)
    throw std::invalid_argument("holder_seminorm: alpha must lie in (0, 1]");
  HolderWitness w;
  w.alpha = alpha;
  CounterRng rng(seed, 0x401d);
  const std::size_t n = cm.dim();
  const double log_lo = std::log(1e-4), log_hi = std::log(1e2);
  for (std::size_t s = 0; s < samples; ++s) {
    Vector x(n);
    for (double& v : x) v = 2.0 * rng.next_normal();
    // direction in (ker R)^perp: kernel components of v only inflate |v|
    Vector dir(cm.rank());
    for (double& v : dir) v = rng.next_normal();
    const double dn = mkit::norm(dir);
    if (dn == 0.0) continue;
    const double r = std::exp(log_lo + (log_hi - log_lo) * rng.next_uniform());
    Vector v(n, 0.0);
    for (std::size_t j = 0; j < cm.rank(); ++j) {
      const std::size_t idx = cm.range_indices()[j];
      const double* u = &cm.R().frame().data[idx * n];
      kernels::axpy(r * dir[j] / dn, u, v.data(), n);
    }
    const Vector rv = cm.R().apply(v);
    const double quot = std::fabs(f.value(x + rv) - f.value(x)) / std::pow(r, alpha);
    if (quot > w.seminorm) {
      w.seminorm = quot;
      w.witnesses.emplace_back(x, v);
      if (w.witnesses.size() > 5) w.witnesses.erase(w.witnesses.begin());
    }
  }
  return w;
}

Table LLBoundReport::to_table() const {
  Table t;
  t.header = {"t",           "x_id",         "S_value",      "f_value", "bound1_slack",
              "bound2_slack", "bound3_slack", "converged"};
  for (const auto& r : rows)
    t.rows.push_back({format_double(r.t), std::to_string(r.x_id), format_double(r.s_value),
                      format_double(r.f_value), format_double(r.bound1_slack),
                      format_double(r.bound2_slack), format_double(r.bound3_slack),
                      r.converged ? "1" : "0"});
  return t;
}

LLBoundReport verify_ll_bounds(const Objective& f, const HolderWitness& witness,
                               double f_sup_norm, const std::vector<double>& t_grid,
                               const std::vector<Vector>& x_grid,
                               const CameronMartinStructure& cm,
                               const EnvelopeConfig& base_cfg) {
  LLBoundReport rep;
  const double alpha = witness.alpha;
  const double sn = witness.seminorm;
  rep.c_alpha = ll_c_alpha(alpha);
  const double e = 2.0 - alpha;
  const double sn_pow = std::pow(sn, 2.0 / e);
  constexpr double kSlackTol = 1e-6;

  std::vector<double> log_t, log_gap;
  CounterRng dir_rng(base_cfg.seed ^ 0xb0b0);
  for (double t : t_grid) {
    EnvelopeConfig cfg = base_cfg;
    cfg.inner_radius =
        std::max(base_cfg.radius_scale * ll_inner_radius(alpha, sn, t), 1e-3);
    cfg.outer_radius =
        std::max(base_cfg.radius_scale * ll_outer_radius(alpha, sn, t), 1e-3);

    const double bound2 = rep.c_alpha * sn_pow * std::pow(t, alpha / e);
    const double bound3 =
        2.0 * std::sqrt(2.0 * rep.c_alpha * sn_pow) * std::pow(t, (alpha - 1.0) / e);

    double mean_gap = 0.0;
    int gap_count = 0;
    for (std::size_t xi = 0; xi < x_grid.size(); ++xi) {
      const Vector& x = x_grid[xi];
      EnvelopeValue sv = lasry_lions_S(f, x, t, cm, cfg);
      const double fv = f.value(x);
      LLBoundRow row;
      row.t = t;
      row.x_id = static_cast<int>(xi);
      row.s_value = sv.value;
      row.f_value = fv;
      row.converged = sv.converged;
      row.bound1_slack = f_sup_norm - std::fabs(sv.value);
      const double gap = fv - sv.value;
      row.bound2_slack = std::min(gap, bound2 - gap);

      // derivative estimate: probe the Lipschitz quotient with increments
      // small enough that the quadratic term |h|^2/t stays subdominant
      const double hn =
          std::max(1e-4, std::min(0.05, 0.05 * bound3 * t));
      double max_quot = 0.0;
      for (int probe = 0; probe < 3; ++probe) {
        Vector dir(cm.rank());
        for (double& v : dir) v = dir_rng.next_normal();
        const double dn = mkit::norm(dir);
        if (dn == 0.0) continue;
        kernels::scale(hn / dn, dir.data(), dir.size());
        const Vector h = cm.hr_from_coords(dir);
        EnvelopeValue sh = lasry_lions_S(f, x + h, t, cm, cfg);
        if (!sh.converged) row.converged = false;
        max_quot = std::max(max_quot, std::fabs(sh.value - sv.value) / hn);
      }
      row.bound3_slack = bound3 - max_quot;

      if (row.converged) {
        if (row.bound1_slack < -kSlackTol || row.bound2_slack < -kSlackTol ||
            row.bound3_slack < -kSlackTol)
          ++rep.violations;
      } else {
        ++rep.flagged;
      }
      if (gap > 0.0) {
        mean_gap += gap;
        ++gap_count;
      }
      rep.rows.push_back(std::move(row));
    }
    if (gap_count > 0) {
      log_t.push_back(std::log(t));
      log_gap.push_back(std::log(mean_gap / gap_count));
    }
  }

  // least-squares slope of log(gap) vs log(t)
  if (log_t.size() >= 2) {
    const double n = static_cast<double>(log_t.size());
    const double mx = kernels::sum(log_t.data(), log_t.size()) / n;
    const double my = kernels::sum(log_gap.data(), log_gap.size()) / n;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < log_t.size(); ++i) {
      num += (log_t[i] - mx) * (log_gap[i] - my);
      den += (log_t[i] - mx) * (log_t[i] - mx);
    }
    rep.decay_slope = (den > 0.0) ? num / den : 0.0;
  }
  return rep;
}

}  // namespace mkit
