#include "mkit/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "mkit/rng.hpp"

namespace mkit {

namespace {

// stratified point cloud: origin, scaled eigen-directions, and Gaussian
// shells out to the 99.9% mass radius
std::vector<Vector> stratified_points(std::size_t n, std::size_t samples,
                                      std::uint64_t seed) {
  std::vector<Vector> pts;
  pts.push_back(Vector(n, 0.0));
  const double shell = 3.5 + std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back(axpy(shell, basis_vector(n, i), Vector(n, 0.0)));
    pts.push_back(axpy(-shell, basis_vector(n, i), Vector(n, 0.0)));
  }
  CounterRng rng(seed, 0xf00d);
  const double scales[4] = {0.5, 1.0, 2.0, 3.5};
  while (pts.size() < samples + 1 + 2 * n) {
    Vector x(n);
    for (double& v : x) v = rng.next_normal();
    kernels::scale(scales[pts.size() % 4], x.data(), n);
    pts.push_back(std::move(x));
  }
  return pts;
}

// seed perturbation from the bit pattern of r
std::uint64_t r_hash(double r) {
  std::uint64_t u = 0;
  std::memcpy(&u, &r, sizeof u);
  return u * 0x9e3779b97f4a7c15ull;
}

}  // namespace

InterpContext make_interp_context(const CylinderFunction& f, double alpha,
                                  const CameronMartinStructure& cm,
                                  const InterpConfig& cfg) {
  InterpContext ctx;
  ctx.phi = objective_from(f);
  ctx.alpha = alpha;
  const auto pts = stratified_points(cm.dim(), cfg.cheap_samples, cfg.seed);
  double lo = ctx.phi.value(pts.front()), hi = lo;
  for (const auto& x : pts) {
    const double v = ctx.phi.value(x);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  ctx.phi_sup = std::max(std::fabs(lo), std::fabs(hi));
  ctx.phi_mid = 0.5 * (lo + hi);
  ctx.phi_osc_half = 0.5 * (hi - lo);
  ctx.lip_seminorm =
      holder_seminorm(ctx.phi, 1.0, cm, cfg.cheap_samples, cfg.seed ^ 0x11).seminorm;
  ctx.holder_seminorm =
      holder_seminorm(ctx.phi, alpha, cm, cfg.cheap_samples, cfg.seed ^ 0x22).seminorm;
  return ctx;
}

KUpperResult k_functional_upper(const InterpContext& ctx, double r,
                                const CameronMartinStructure& cm, const InterpConfig& cfg) {
  KUpperResult res;
  res.r = r;
  res.candidates.push_back({"(phi,0)", ctx.phi_sup});
  res.candidates.push_back(
      {"(phi-c,c)", ctx.phi_osc_half + r * std::fabs(ctx.phi_mid)});
  res.candidates.push_back({"(0,phi)", r * (ctx.phi_sup + ctx.lip_seminorm)});

  const double alpha = ctx.alpha;
  const double e = 2.0 - alpha;
  const double t = std::pow(r, e);
  const double sn_pow = std::pow(ctx.holder_seminorm, 2.0 / e);
  const double c_a = ll_c_alpha(alpha);
  const double gap_bound = c_a * sn_pow * std::pow(t, alpha / e);
  const double lip_bound = 2.0 * std::sqrt(2.0 * c_a * sn_pow) * std::pow(t, (alpha - 1.0) / e);
  const double ll_theory = gap_bound + r * (ctx.phi_sup + lip_bound);

  double trivial_min = res.candidates[0].value;
  for (const auto& c : res.candidates) trivial_min = std::min(trivial_min, c.value);

  // evaluate the envelope decomposition unless its theory value is already
  // far above the best trivial bound (sampled values sit well below the
  // theory constants, so near-competitive cases still get sampled)
  if (ctx.holder_seminorm > 0.0 && ll_theory < 4.0 * trivial_min) {
    EnvelopeConfig env = cfg.env;
    env.seed = cfg.seed ^ 0x5a5a;
    env.inner_radius =
        std::max(env.radius_scale * ll_inner_radius(alpha, ctx.holder_seminorm, t), 1e-3);
    env.outer_radius =
        std::max(env.radius_scale * ll_outer_radius(alpha, ctx.holder_seminorm, t), 1e-3);

    const auto pts = stratified_points(cm.dim(), cfg.sup_samples, cfg.seed ^ r_hash(r));
    bool conv = true;
    double sup_f = 0.0, sup_g = 0.0;
    std::vector<std::pair<Vector, double>> g_vals;
    for (std::size_t i = 0; i < pts.size() && i < cfg.sup_samples; ++i) {
      EnvelopeValue sv = lasry_lions_S(ctx.phi, pts[i], t, cm, env);
      if (!sv.converged) conv = false;
      sup_f = std::max(sup_f, std::fabs(ctx.phi.value(pts[i]) - sv.value));
      sup_g = std::max(sup_g, std::fabs(sv.value));
      g_vals.emplace_back(pts[i], sv.value);
    }
    CounterRng rng(cfg.seed ^ 0x9c9c ^ r_hash(r), 0x77);
    double lip_g = 0.0;
    for (std::size_t p = 0; p < cfg.lip_pairs && p < g_vals.size(); ++p) {
      Vector dir(cm.rank());
      for (double& v : dir) v = rng.next_normal();
      const double dn = mkit::norm(dir);
      if (dn == 0.0) continue;
      const double mag = std::exp(std::log(1e-2) +
                                  (std::log(10.0) - std::log(1e-2)) * rng.next_uniform());
      kernels::scale(mag / dn, dir.data(), dir.size());
      const Vector h = cm.hr_from_coords(dir);
      EnvelopeValue sh = lasry_lions_S(ctx.phi, g_vals[p].first + h, t, cm, env);
      if (!sh.converged) conv = false;
      lip_g = std::max(lip_g, std::fabs(sh.value - g_vals[p].second) / mag);
    }
    res.candidates.push_back({"lasry-lions", sup_f + r * (sup_g + lip_g), conv});
  }

  const auto best = std::min_element(
      res.candidates.begin(), res.candidates.end(),
      [](const KCandidate& a, const KCandidate& b) { return a.value < b.value; });
  res.value = best->value;
  res.used = best->label;
  res.converged = best->converged;
  return res;
}

InterpNormResult interp_norm(const InterpContext& ctx, const CameronMartinStructure& cm,
                             const InterpConfig& cfg) {
  InterpNormResult out;
  const double llo = std::log(cfg.r_min), lhi = std::log(cfg.r_max);
  std::vector<double> rs;
  for (std::size_t i = 0; i < cfg.grid_points; ++i)
    rs.push_back(std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                     static_cast<double>(cfg.grid_points - 1)));
  for (double r : rs) {
    KUpperResult k = k_functional_upper(ctx, r, cm, cfg);
    if (!k.converged) out.converged = false;
    out.rows.push_back(std::move(k));
  }
  // monotone envelope from the right: K is nondecreasing, so any bound at a
  // larger r also bounds K at this r
  for (std::size_t i = out.rows.size(); i-- > 1;) {
    if (out.rows[i].value < out.rows[i - 1].value) {
      out.rows[i - 1].value = out.rows[i].value;
      out.rows[i - 1].used = out.rows[i].used + " (envelope)";
      out.rows[i - 1].converged = out.rows[i].converged;
    }
  }
  for (const auto& row : out.rows)
    out.value = std::max(out.value, row.value / std::pow(row.r, ctx.alpha));

  const double e = 2.0 - ctx.alpha;
  const double k1 = ll_c_alpha(ctx.alpha) * std::pow(ctx.holder_seminorm, 2.0 / e);
  const double k2 = ctx.phi_sup + 2.0 * std::sqrt(2.0 * k1);
  out.theory_cap = k1 + k2;
  return out;
}

Table InterpNormResult::to_table(double alpha) const {
  Table t;
  t.header = {"r", "K_upper", "scaled_K", "decomposition", "theory_slack", "converged"};
  const double cap = theory_cap;
  for (const auto& row : rows) {
    const double scaled = row.value / std::pow(row.r, alpha);
    t.rows.push_back({format_double(row.r), format_double(row.value),
                      format_double(scaled), row.used,
                      format_double(cap * std::pow(row.r, alpha) - row.value),
                      row.converged ? "1" : "0"});
  }
  return t;
}

CheckRow embedding_check(const InterpContext& ctx, const InterpNormResult& nrm) {
  CheckRow row;
  row.name = "embedding[" + ctx.phi.name + "]";
  row.residual = ctx.holder_seminorm - 3.0 * nrm.value;
  row.tolerance = 1e-12 * (1.0 + 3.0 * nrm.value);
  row.pass = row.residual <= row.tolerance;
  return row;
}

std::vector<CheckRow> holder_compose_check(const CylinderFunction& f, double alpha,
                                           const CameronMartinStructure& cm,
                                           std::size_t samples, std::uint64_t seed) {
  if (cm.degenerate())
    throw std::invalid_argument("holder_compose_check: R must be injective");
  const std::size_t n = cm.dim();
  const Objective phi = objective_from(f);
  CounterRng rng(seed, 0xc0c0);
  const std::size_t mags = 40;
  const std::size_t per = std::max<std::size_t>(1, samples / mags);
  double est_r = 0.0, est_comp = 0.0;
  for (std::size_t mi = 0; mi < mags; ++mi) {
    const double rho = std::exp(std::log(1e-3) + (std::log(1e2) - std::log(1e-3)) *
                                                     static_cast<double>(mi) /
                                                     static_cast<double>(mags - 1));
    for (std::size_t s = 0; s < per; ++s) {
      // matched pair (x = Ry, v): both estimators see the same quotient,
      // which anchors the comparison; independent tails probe each side
      Vector y(n), v(n);
      for (double& u : y) u = 2.0 * rng.next_normal();
      for (double& u : v) u = rng.next_normal();
      const double vn = mkit::norm(v);
      if (vn == 0.0) continue;
      kernels::scale(rho / vn, v.data(), n);
      const Vector ry = cm.R().apply(y);
      const double matched =
          std::fabs(phi.value(ry + cm.R().apply(v)) - phi.value(ry)) / std::pow(rho, alpha);
      est_r = std::max(est_r, matched);
      est_comp = std::max(est_comp, matched);

      Vector x(n), w(n);
      for (double& u : x) u = 2.0 * rng.next_normal();
      for (double& u : w) u = rng.next_normal();
      const double wn = mkit::norm(w);
      if (wn == 0.0) continue;
      kernels::scale(rho / wn, w.data(), n);
      est_r = std::max(est_r, std::fabs(phi.value(x + cm.R().apply(w)) - phi.value(x)) /
                                  std::pow(rho, alpha));
      Vector y2(n);
      for (double& u : y2) u = 2.0 * rng.next_normal();
      est_comp = std::max(est_comp,
                          std::fabs(phi.value(cm.R().apply(y2 + w)) - phi.value(cm.R().apply(y2))) /
                              std::pow(rho, alpha));
    }
  }
  const double scale = std::max({est_r, est_comp, 1e-14});
  CheckRow row;
  row.name = "holder_compose[" + f.name + "]";
  row.residual = std::fabs(est_r - est_comp) / scale;
  row.tolerance = 0.05;
  row.pass = row.residual <= row.tolerance;
  return {row};
}

double k_lower_1d(const std::vector<double>& xs, const std::vector<double>& phis,
                  double r, double ell_max, std::size_t ell_steps) {
  if (xs.size() != phis.size() || xs.size() < 2)
    throw std::invalid_argument("k_lower_1d: need matched sample of size >= 2");
  auto dist_to_lip = [&](double ell) {
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = 0; j < xs.size(); ++j) {
        const double excess = phis[i] - phis[j] - ell * std::fabs(xs[i] - xs[j]);
        worst = std::max(worst, excess);
      }
    return 0.5 * worst;
  };
  // on [l_i, l_{i+1}] one has d(l) + r l >= d(l_{i+1}) + r l_i; the tail

  // l > ell_max contributes at least r * ell_max
  double best = r * ell_max;
  for (std::size_t i = 0; i < ell_steps; ++i) {
    const double lo = ell_max * static_cast<double>(i) / static_cast<double>(ell_steps);
    const double hi = ell_max * static_cast<double>(i + 1) / static_cast<double>(ell_steps);
    best = std::min(best, r * lo + dist_to_lip(hi));
  }
  return best;
}

double k_classical_1d(const std::vector<double>& xs, const std::vector<double>& phis,
                      double r, double ell_max, std::size_t ell_steps) {
  if (xs.size() != phis.size() || xs.size() < 2)
    throw std::invalid_argument("k_classical_1d: need matched sample of size >= 2");
  const std::size_t n = xs.size();
  double phi_lo = phis[0], phi_hi = phis[0];
  for (double v : phis) {
    phi_lo = std::min(phi_lo, v);
    phi_hi = std::max(phi_hi, v);
  }
  const double phi_sup = std::max(std::fabs(phi_lo), std::fabs(phi_hi));
  const double mid = 0.5 * (phi_lo + phi_hi);
  double best = std::min(phi_sup, 0.5 * (phi_hi - phi_lo) + r * std::fabs(mid));
  for (std::size_t li = 0; li <= ell_steps; ++li) {
    const double ell = ell_max * static_cast<double>(li) / static_cast<double>(ell_steps);
    // g = midpoint of the upper and lower l-Lipschitz envelopes of the data
    double err = 0.0, g_sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double up = phis[0] - ell * std::fabs(xs[i] - xs[0]);
      double dn = phis[0] + ell * std::fabs(xs[i] - xs[0]);
      for (std::size_t j = 1; j < n; ++j) {
        up = std::max(up, phis[j] - ell * std::fabs(xs[i] - xs[j]));
        dn = std::min(dn, phis[j] + ell * std::fabs(xs[i] - xs[j]));
      }
      const double g = 0.5 * (up + dn);
      err = std::max(err, std::fabs(phis[i] - g));
      g_sup = std::max(g_sup, std::fabs(g));
    }
    best = std::min(best, err + r * (g_sup + ell));
  }
  return best;
}

}  // namespace mkit
