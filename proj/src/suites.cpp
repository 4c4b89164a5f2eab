#include "mkit/suites.hpp"

#include <algorithm>
#include <cmath>

#include "mkit/gradients.hpp"
#include "mkit/interpolation.hpp"
#include "mkit/malliavin.hpp"
#include "mkit/rng.hpp"

namespace mkit {

namespace {

constexpr const char* kVersion = "malliavin-kit 0.1.0";

std::uint64_t suite_seed(const ExperimentConfig& cfg, std::size_t index) {
  return detail::splitmix64(cfg.seed ^ (index + 1));
}

Vector default_r_spectrum(std::size_t n) {
  Vector ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = std::pow(2.0, -static_cast<double>(i));
  if (n >= 3) ev[n - 1] = 0.0;  // exercise the kernel by default
  return ev;
}

Vector default_q_spectrum(std::size_t n) {
  Vector ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = 1.0 / static_cast<double>(i + 1);
  return ev;
}

SelfAdjointOp build_op(const Vector& ev, std::uint64_t rotation_seed) {
  if (rotation_seed != 0) return SelfAdjointOp::rotated(ev, rotation_seed);
  return SelfAdjointOp::diagonal(ev);
}

SelfAdjointOp make_R(const ExperimentConfig& cfg, std::size_t n) {
  Vector ev = cfg.r_eigenvalues;
  if (ev.size() != n) ev = default_r_spectrum(n);
  return build_op(ev, cfg.rotation_seed);
}

SelfAdjointOp make_Q(const ExperimentConfig& cfg, std::size_t n) {
  Vector ev = cfg.q_eigenvalues;
  if (ev.size() != n) ev = default_q_spectrum(n);
  return build_op(ev, cfg.rotation_seed == 0 ? 0 : cfg.rotation_seed ^ 0x71);
}

CheckRow residual_row(std::string name, double residual, double tolerance) {
  CheckRow row;
  row.name = std::move(name);
  row.residual = residual;
  row.tolerance = tolerance;
  row.pass = residual <= tolerance;
  return row;
}

Matrix op_as_matrix(const std::function<Vector(const Vector&)>& apply, std::size_t n) {
  Matrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const Vector col = apply(basis_vector(n, j));
    for (std::size_t i = 0; i < n; ++i) m(i, j) = col[i];
  }
  return m;
}

// ---------------------------------------------------------------- gradcheck

ExperimentReport suite_gradcheck(const ExperimentConfig& cfg, std::uint64_t seed) {
  ExperimentReport rep;
  rep.suite = "gradcheck";

  // pseudo-inverse identities over randomized spectra and frames
  double worst_rpr = 0.0, worst_proj = 0.0;
  CounterRng rng(seed, 0x01);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 7);
    Vector ev(d);
    for (double& v : ev) v = 2.0 * rng.next_uniform();
    if (trial % 2 == 0)
      for (std::size_t k = 0; k < 1 + d / 3; ++k) ev[(trial + k) % d] = 0.0;
    const SelfAdjointOp r = SelfAdjointOp::rotated(ev, rng.next_u64());
    const CameronMartinStructure cm = pseudo_inverse(r);
    const Matrix rd = r.dense();
    const Matrix pinv = op_as_matrix([&](const Vector& x) { return cm.pinv_apply(x); }, d);
    const Matrix pker = op_as_matrix([&](const Vector& x) { return cm.kernel_project(x); }, d);
    const double rnorm = std::max(frobenius_norm(rd), 1e-30);
    Matrix rpr = matmul(rd, matmul(pinv, rd));
    for (std::size_t i = 0; i < rd.data.size(); ++i) rpr.data[i] -= rd.data[i];
    worst_rpr = std::max(worst_rpr, frobenius_norm(rpr) / rnorm);
    Matrix pr = matmul(pinv, rd);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        pr(i, j) -= (i == j ? 1.0 : 0.0) - pker(i, j);
    worst_proj = std::max(worst_proj, frobenius_norm(pr) / std::sqrt(static_cast<double>(d)));
  }
  rep.checks.push_back(residual_row("pinv_identity_RpinvR", worst_rpr, 1e-12));
  rep.checks.push_back(residual_row("pinv_identity_projector", worst_proj, 1e-12));

  // gradient relations over the battery
  const SelfAdjointOp r = make_R(cfg, cfg.n);
  const CameronMartinStructure cm = pseudo_inverse(r);
  const auto battery = standard_battery(cfg.n);
  std::vector<std::size_t> kernel_idx;
  for (std::size_t i = 0; i < cfg.n; ++i) {
    bool in_range = false;
    for (std::size_t j : cm.range_indices()) in_range = in_range || j == i;
    if (!in_range) kernel_idx.push_back(i);
  }

  double res_hr_r = 0.0, res_r_full = 0.0, res_norm = 0.0, res_t0 = 0.0, res_t1 = 0.0,
         res_fd = 0.0, res_fd2 = 0.0, res_ker_grad = 0.0, res_ker_hess = 0.0,
         res_ker_fd = 0.0;
  CounterRng prng(seed, 0x02);
  for (const auto& f : battery) {
    for (std::size_t p = 0; p < cfg.battery_points; ++p) {
      Vector x(cfg.n);
      for (double& v : x) v = 1.5 * prng.next_normal();
      const Vector g = f.grad_full(x);
      const Vector gr = grad_R(f, x, cm);
      const Vector ghr = grad_HR(f, x, cm);
      const double scale = 1.0 + mkit::norm(g) + mkit::norm(gr) + mkit::norm(ghr);
      res_hr_r = std::max(res_hr_r, mkit::norm(ghr - r.apply(gr)) / scale);
      res_r_full = std::max(res_r_full, mkit::norm(gr - r.apply(g)) / scale);
      const double hr_norm = cm.norm(cm.range_project(ghr));
      res_norm = std::max(res_norm, std::fabs(mkit::norm(gr) - hr_norm) / scale);

      // finite-difference oracle for the R-gradient; probes whose two-step
      // error estimate exceeds the comparison resolution are discarded
      // (the battery includes functions with unbounded higher derivatives)
      FDConfig fd_half;
      fd_half.first_step *= 0.5;
      fd_half.second_step *= 0.5;
      for (int k = 0; k < 2; ++k) {
        Vector v(cfg.n);
        for (double& w : v) w = prng.next_normal();
        const Vector rv = r.apply(v);
        const double fd_c = fd_directional(f, x, rv);
        const double fd_f = fd_directional(f, x, rv, fd_half);
        const double denom = 1.0 + std::fabs(fd_f) + mkit::norm(v) * scale;
        if (std::fabs(fd_c - fd_f) / 3.0 > 1e-7 * denom) continue;
        res_fd = std::max(res_fd, std::fabs(mkit::dot(gr, v) - fd_f) / denom);
      }

      if (p < 10) {
        // transport isometry for orders 0 and 1
        MultilinearForm a0;
        a0.order = 0;
        a0.space = MultilinearForm::Space::ker_perp;
        a0.vec = gr;
        const MultilinearForm t0 = transport_Tn(a0, cm, 0);
        res_t0 = std::max(res_t0,
                          std::fabs(form_norm(a0, cm) - form_norm(t0, cm)) / scale);
        const MultilinearForm hr_form = hess_R(f, x, cm);
        const MultilinearForm t1 = transport_Tn(hr_form, cm, 1);
        const double n_a = form_norm(hr_form, cm), n_t = form_norm(t1, cm);
        res_t1 = std::max(res_t1, std::fabs(n_a - n_t) / (1.0 + n_a + n_t));

        // second-order FD oracle with the same two-step trust gate
        Vector v(cfg.n), w(cfg.n);
        for (double& u : v) u = prng.next_normal();
        for (double& u : w) u = prng.next_normal();
        const Vector rv = r.apply(v), rw = r.apply(w);
        const double fd2_c = fd_second_directional(f, x, rv, rw);
        const double fd2_f = fd_second_directional(f, x, rv, rw, fd_half);
        const double an = mkit::dot(matvec(hr_form.mat, w), v);
        const double denom2 = 1.0 + std::fabs(fd2_f) + std::fabs(an);
        if (std::fabs(fd2_c - fd2_f) / 3.0 <= 1e-7 * denom2)
          res_fd2 = std::max(res_fd2, std::fabs(an - fd2_f) / denom2);
      }

      for (std::size_t ki : kernel_idx) {
        Vector vk(cfg.n);
        const std::size_t n = cfg.n;
        for (std::size_t c = 0; c < n; ++c) vk[c] = r.frame()(ki, c);
        res_ker_grad = std::max(res_ker_grad, std::fabs(mkit::dot(gr, vk)) / scale);
        const MultilinearForm hr_form = hess_R(f, x, cm);
        res_ker_hess = std::max(
            res_ker_hess, mkit::norm(matvec(hr_form.mat, vk)) / (1.0 + frobenius_norm(hr_form.mat)));
        res_ker_fd = std::max(res_ker_fd, std::fabs(fd_directional(f, x, r.apply(vk))));
      }
    }
  }
  rep.checks.push_back(residual_row("grad_HR_eq_R_grad_R", res_hr_r, 1e-10));
  rep.checks.push_back(residual_row("grad_R_eq_R_grad", res_r_full, 1e-10));
  rep.checks.push_back(residual_row("norm_equality_R_vs_HR", res_norm, 1e-10));
  rep.checks.push_back(residual_row("transport_isometry_T0", res_t0, 1e-8));
  rep.checks.push_back(residual_row("transport_isometry_T1", res_t1, 1e-8));
  rep.checks.push_back(residual_row("fd_gradient_oracle", res_fd, 1e-6));
  rep.checks.push_back(residual_row("fd_hessian_oracle", res_fd2, 1e-6));
  if (!kernel_idx.empty()) {
    rep.checks.push_back(residual_row("kernel_annihilation_grad", res_ker_grad, 1e-12));
    rep.checks.push_back(residual_row("kernel_annihilation_hess", res_ker_hess, 1e-12));
    rep.checks.push_back(residual_row("kernel_annihilation_fd", res_ker_fd, 1e-12));
  }
  return rep;
}

// ---------------------------------------------------------------- malliavin

std::vector<SmoothRandomVariable> srv_battery(const SelfAdjointOp& q,
                                              const std::vector<Vector>& z) {
  const std::size_t m = z.size();
  std::vector<SmoothRandomVariable> out;
  out.emplace_back(
      "linear", [](const Vector& u) { return u[0]; },
      [m](const Vector&) { return basis_vector(m, 0); }, z, q,
      CylinderFunction::Growth::polynomial, 1);
  out.emplace_back(
      "cos", [](const Vector& u) { return std::cos(u[0]); },
      [m](const Vector& u) {
        Vector g(m, 0.0);
        g[0] = -std::sin(u[0]);
        return g;
      },
      z, q, CylinderFunction::Growth::bounded);
  out.emplace_back(
      "cubic", [](const Vector& u) { return u[0] * u[0] * u[0] - 3.0 * u[0]; },
      [m](const Vector& u) {
        Vector g(m, 0.0);
        g[0] = 3.0 * u[0] * u[0] - 3.0;
        return g;
      },
      z, q, CylinderFunction::Growth::polynomial, 3);
  out.emplace_back(
      "saturated", [](const Vector& u) { return u[0] * u[0] / (1.0 + u[0] * u[0]); },
      [m](const Vector& u) {
        Vector g(m, 0.0);
        const double d = 1.0 + u[0] * u[0];
        g[0] = 2.0 * u[0] / (d * d);
        return g;
      },
      z, q, CylinderFunction::Growth::bounded);
  if (m >= 2) {
    out.emplace_back(
        "product", [](const Vector& u) { return u[0] * u[1]; },
        [m](const Vector& u) {
          Vector g(m, 0.0);
          g[0] = u[1];
          g[1] = u[0];
          return g;
        },
        z, q, CylinderFunction::Growth::polynomial, 2);
    out.emplace_back(
        "mixed", [](const Vector& u) { return std::sin(u[1]) + 0.5 * u[0] * u[0]; },
        [m](const Vector& u) {
          Vector g(m, 0.0);
          g[0] = u[0];
          g[1] = std::cos(u[1]);
          return g;
        },
        z, q, CylinderFunction::Growth::polynomial, 2);
  }
  return out;
}

std::vector<Vector> make_directions(std::size_t n, std::size_t m, std::uint64_t seed) {
  const Matrix frame = random_orthonormal(n, seed);
  std::vector<Vector> z;
  for (std::size_t i = 0; i < m; ++i) {
    Vector zi(n);
    for (std::size_t c = 0; c < n; ++c) zi[c] = frame(i, c);
    z.push_back(std::move(zi));
  }
  return z;
}

ExperimentReport suite_malliavin(const ExperimentConfig& cfg, std::uint64_t seed) {
  ExperimentReport rep;
  rep.suite = "malliavin";
  const SelfAdjointOp q = make_Q(cfg, cfg.n);
  const SelfAdjointOp q_sqrt = q.sqrt();
  const auto z = make_directions(cfg.n, std::min<std::size_t>(3, cfg.n), seed ^ 0x33);
  const auto battery = srv_battery(q, z);

  CounterRng rng(seed, 0x04);
  for (const auto& f : battery) {
    double res_pic = 0.0;
    for (int s = 0; s < 25; ++s) {
      Vector xi(cfg.n);
      for (double& v : xi) v = rng.next_normal();
      const Vector d_cdp = f.derivative(xi, Picture::cdp);
      const Vector d_gross = f.derivative(xi, Picture::gross);
      const Vector lifted = q_sqrt.apply(d_cdp);
      const double scale = 1.0 + mkit::norm(d_gross) + mkit::norm(lifted);
      for (std::size_t c = 0; c < cfg.n; ++c)
        res_pic = std::max(res_pic, std::fabs(d_gross[c] - lifted[c]) / scale);
    }
    rep.checks.push_back(residual_row("gross_eq_sqrtQ_cdp[" + f.name() + "]", res_pic, 1e-12));

    const double n_cdp = sobolev_norm_p(f, 2.0, Picture::cdp, cfg.mc_samples, seed ^ 0x77);
    const double n_gross = sobolev_norm_p(f, 2.0, Picture::gross, cfg.mc_samples, seed ^ 0x77);
    rep.checks.push_back(residual_row("sobolev2_picture_gap[" + f.name() + "]",
                                      std::fabs(n_cdp - n_gross) / (1.0 + n_cdp + n_gross),
                                      1e-10));
  }

  // hat on range(Q^{1/2}) agrees with white noise at the preimage
  double res_hat = 0.0;
  GaussianSampler sampler(q, seed ^ 0x55);
  for (int s = 0; s < 50; ++s) {
    const Vector x = sampler.sample();
    const Vector h = q_sqrt.apply(z[0]);
    res_hat = std::max(res_hat, std::fabs(hat(q, h, x) - white_noise(q, z[0], x)));
  }
  rep.checks.push_back(residual_row("hat_eq_white_noise_on_range", res_hat, 1e-10));
  return rep;
}

// ---------------------------------------------------------------- ibp

ExperimentReport suite_ibp(const ExperimentConfig& cfg, std::uint64_t seed) {
  ExperimentReport rep;
  rep.suite = "ibp";
  const SelfAdjointOp q = make_Q(cfg, cfg.n);
  const auto z = make_directions(cfg.n, std::min<std::size_t>(3, cfg.n), seed ^ 0x33);
  const auto battery = srv_battery(q, z);

  std::vector<std::pair<std::string, Vector>> hs;
  hs.emplace_back("z1", z[0]);
  if (z.size() >= 2) {
    hs.emplace_back("z2", z[1]);
    Vector mix = axpy(0.8, z[1], 0.6 * z[0]);
    hs.emplace_back("mix", std::move(mix));
  }

  auto add_mc = [&rep](const std::string& name, const IbpResult& r) {
    MonteCarloRow row;
    row.name = name;
    row.estimate = r.residual;
    row.std_error = r.std_error;
    row.target = 0.0;
    row.z_score = r.z_score;
    row.pass = std::fabs(r.z_score) <= 3.0;
    rep.mc_rows.push_back(row);
  };

  std::uint64_t pair_idx = 0;
  for (const auto& f : battery)
    for (const auto& [hname, h] : hs) {
      add_mc("ibp_cdp[" + f.name() + "," + hname + "]",
             ibp_check(f, h, cfg.ibp_samples, seed ^ (0x100 + pair_idx), Picture::cdp));
      ++pair_idx;
    }
  // the Gross picture pairs h with its Cameron-Martin representative
  const SelfAdjointOp q_sqrt = q.sqrt();
  for (const auto& f : battery) {
    add_mc("ibp_gross[" + f.name() + ",z1]",
           ibp_check(f, q_sqrt.apply(z[0]), cfg.ibp_samples, seed ^ (0x900 + pair_idx),
                     Picture::gross));
    ++pair_idx;
  }

  // Gaussian moment oracle E[W^4] = 3 ||z||^4 = 3
  {
    CounterRng rng(seed, 0x4444);
    double mean = 0.0, m2 = 0.0;
    const std::size_t count = cfg.ibp_samples;
    for (std::size_t s = 0; s < count; ++s) {
      const double w = rng.next_normal();
      const double v = w * w * w * w;
      const double delta = v - mean;
      mean += delta / static_cast<double>(s + 1);
      m2 += delta * (v - mean);
    }
    const double se = std::sqrt(m2 / static_cast<double>(count - 1) /
                                static_cast<double>(count));
    MonteCarloRow row;
    row.name = "moment_oracle_EW4";
    row.estimate = mean;
    row.std_error = se;
    row.target = 3.0;
    row.z_score = (mean - 3.0) / se;
    row.pass = std::fabs(row.z_score) <= 3.0;
    rep.mc_rows.push_back(row);
  }
  return rep;
}

// ---------------------------------------------------------------- chaos

ExperimentReport suite_chaos(const ExperimentConfig& cfg, std::uint64_t seed) {
  ExperimentReport rep;
  rep.suite = "chaos";
  const std::size_t n = std::max<std::size_t>(cfg.n, 3);
  const SelfAdjointOp q = make_Q(cfg, n);
  const auto z = make_directions(n, 3, seed ^ 0x33);
  const auto z1 = std::vector<Vector>{z[0]};
  const auto z2 = std::vector<Vector>{z[0], z[1]};

  struct Poly {
    SmoothRandomVariable f;
    int cap;
  };
  std::vector<Poly> polys;
  polys.push_back({SmoothRandomVariable(
                       "u^3", [](const Vector& u) { return u[0] * u[0] * u[0]; },
                       [](const Vector& u) { return Vector{3.0 * u[0] * u[0]}; }, z1, q,
                       CylinderFunction::Growth::polynomial, 3),
                   4});
  polys.push_back({SmoothRandomVariable(
                       "u^2 v",
                       [](const Vector& u) { return u[0] * u[0] * u[1]; },
                       [](const Vector& u) {
                         return Vector{2.0 * u[0] * u[1], u[0] * u[0]};
                       },
                       z2, q, CylinderFunction::Growth::polynomial, 3),
                   4});
  polys.push_back({SmoothRandomVariable(
                       "u^6 - u^2",
                       [](const Vector& u) {
                         return std::pow(u[0], 6) - u[0] * u[0];
                       },
                       [](const Vector& u) {
                         return Vector{6.0 * std::pow(u[0], 5) - 2.0 * u[0]};
                       },
                       z1, q, CylinderFunction::Growth::polynomial, 6),
                   7});
  polys.push_back({SmoothRandomVariable(
                       "(uvw)^2",
                       [](const Vector& u) {
                         return u[0] * u[0] * u[1] * u[1] * u[2] * u[2];
                       },
                       [](const Vector& u) {
                         return Vector{2.0 * u[0] * u[1] * u[1] * u[2] * u[2],
                                       2.0 * u[1] * u[0] * u[0] * u[2] * u[2],
                                       2.0 * u[2] * u[0] * u[0] * u[1] * u[1]};
                       },
                       std::vector<Vector>{z[0], z[1], z[2]}, q,
                       CylinderFunction::Growth::polynomial, 6),
                   7});
  for (const auto& [f, cap] : polys) {
    const DomainCheck dc = domain_check(f, cap);
    rep.checks.push_back(residual_row("domain_identity[" + f.name() + "]",
                                      std::fabs(dc.lhs - dc.rhs) / (1.0 + std::fabs(dc.lhs)),
                                      1e-8));
  }

  // cos(W_z) against the closed-form coefficient oracle
  SmoothRandomVariable fcos(
      "cos(W)", [](const Vector& u) { return std::cos(u[0]); },
      [](const Vector& u) { return Vector{-std::sin(u[0])}; }, z1, q,
      CylinderFunction::Growth::bounded);
  const ChaosExpansion ch = chaos_project(fcos, 12);
  double coeff_res = 0.0;
  double fact = 1.0;
  for (std::size_t i = 0; i < ch.alphas.size(); ++i) {
    const int a = ch.alphas[i][0];
    double target = 0.0;
    if (a % 2 == 0) {
      fact = 1.0;
      for (int k = 2; k <= a; ++k) fact *= static_cast<double>(k);
      target = ((a / 2) % 2 == 0 ? 1.0 : -1.0) * std::exp(-0.5) / std::sqrt(fact);
    }
    coeff_res = std::max(coeff_res, std::fabs(ch.coeffs[i] - target));
  }
  rep.checks.push_back(residual_row("cos_chaos_coefficients", coeff_res, 1e-4));
  rep.checks.push_back(residual_row("cos_chaos_tail", std::fabs(ch.tail_gap), 1e-4));
  const DomainCheck dcos = domain_check(fcos, 12);
  rep.checks.push_back(residual_row(
      "cos_domain_lhs", std::fabs(dcos.lhs - 0.5 * (1.0 - std::exp(-2.0))), 1e-4));
  rep.checks.push_back(
      residual_row("cos_domain_identity", std::fabs(dcos.lhs - dcos.rhs), 1e-4));

  Table coeff_table;
  coeff_table.header = {"alpha", "coeff"};
  for (std::size_t i = 0; i < ch.alphas.size(); ++i)
    coeff_table.rows.push_back(
        {std::to_string(ch.alphas[i][0]), format_double(ch.coeffs[i])});
  rep.tables.push_back(std::move(coeff_table));
  return rep;
}

// ---------------------------------------------------------------- lasry-lions

Objective quadratic_hr_objective(double a, const CameronMartinStructure& cm) {
  Objective o;
  o.name = "quadratic_hr";
  o.value = [a, &cm](const Vector& x) {
    const Vector p = cm.pinv_apply(x);
    return a * mkit::dot(p, p);
  };
  o.grad = [a, &cm](const Vector& x) {
    Vector g = cm.pinv_apply(cm.pinv_apply(x));
    kernels::scale(2.0 * a, g.data(), g.size());
    return g;
  };
  return o;
}

ExperimentReport suite_lasry_lions(const ExperimentConfig& cfg, std::uint64_t seed) {
  ExperimentReport rep;
  rep.suite = "lasry-lions";
  const std::size_t nb = std::min<std::size_t>(cfg.n, 4);
  const SelfAdjointOp r = make_R(cfg, nb);
  const CameronMartinStructure cm = pseudo_inverse(r);

  // closed-form oracle for quadratic inputs
  CounterRng rng(seed, 0x07);
  for (double a : {0.5, 1.0, 2.0})
    for (double t : {0.01, 0.1, 1.0}) {
      const Objective quad = quadratic_hr_objective(a, cm);
      double worst = 0.0;
      bool all_conv = true;
      for (int p = 0; p < 20; ++p) {
        Vector c(cm.rank());
        for (double& v : c) v = rng.next_normal();
        kernels::scale(1.2, c.data(), c.size());
        const Vector x = cm.hr_from_coords(c);
        const double xsq = kernels::sumsq(c.data(), c.size());
        EnvelopeConfig env;
        env.seed = seed ^ (0x700 + p);
        env.inner_radius = env.outer_radius = 3.0 * std::sqrt(xsq) + 1.0;
        const EnvelopeValue s = lasry_lions_S(quad, x, t, cm, env);
        if (!s.converged) all_conv = false;
        worst = std::max(worst, std::fabs(s.value - a / (1.0 + a * t) * xsq));
      }
      CheckRow row = residual_row(
          "quadratic_oracle[a=" + format_double(a) + ",t=" + format_double(t) + "]", worst,
          1e-4);
      row.pass = row.pass && all_conv;
      rep.checks.push_back(row);
    }

  // rank-1 nested-grid oracle for the cos battery
  {
    const SelfAdjointOp r1 = SelfAdjointOp::diagonal({0.8});
    const CameronMartinStructure cm1 = pseudo_inverse(r1);
    const Objective fcos = objective_from(make_cos_cylinder({1.0}));
    double worst = 0.0;
    for (double x0 : {0.0, 0.7, -1.3})
      for (double t : {0.1, 1.0}) {
        EnvelopeConfig env;
        env.seed = seed ^ 0xaaa;
        env.inner_radius = env.outer_radius = 5.0;
        const EnvelopeValue s = lasry_lions_S(fcos, {x0}, t, cm1, env);
        const double ref = ll_nested_grid_1d(fcos, {x0}, t, cm1, 5.0, 400);
        worst = std::max(worst, std::fabs(s.value - ref));
      }
    rep.checks.push_back(residual_row("nested_grid_oracle_1d", worst, 1e-3));
  }

  // quantitative bound suite on a bounded Hoelder function
  {
    const Objective f = objective_from(make_cos_cylinder(basis_vector(nb, 0), 1.3));
    const HolderWitness wit = holder_seminorm(f, cfg.alpha, cm, 4000, seed ^ 0xbb);
    double f_sup = 1.0;  // |cos| <= 1
    std::vector<Vector> x_grid;
    CounterRng xr(seed, 0x08);
    for (int p = 0; p < 4; ++p) {
      Vector x(nb);
      for (double& v : x) v = xr.next_normal();
      x_grid.push_back(std::move(x));
    }
    EnvelopeConfig base;
    base.seed = seed ^ 0xcc;
    const LLBoundReport bounds =
        verify_ll_bounds(f, wit, f_sup, cfg.t_grid, x_grid, cm, base);
    rep.checks.push_back(
        residual_row("ll_violations", static_cast<double>(bounds.violations), 0.5));
    const double conv_frac =
        bounds.rows.empty()
            ? 0.0
            : 1.0 - static_cast<double>(bounds.flagged) / static_cast<double>(bounds.rows.size());
    rep.checks.push_back(residual_row("ll_unconverged_fraction", 1.0 - conv_frac, 0.5));
    const double slope_target = cfg.alpha / (2.0 - cfg.alpha) - 0.1;
    CheckRow slope;
    slope.name = "ll_decay_slope";
    slope.residual = slope_target - bounds.decay_slope;
    slope.tolerance = 0.0;
    slope.pass = slope.residual <= 0.0;
    rep.checks.push_back(slope);
    rep.tables.push_back(bounds.to_table());
  }
  return rep;
}

// ---------------------------------------------------------------- interp

ExperimentReport suite_interp(const ExperimentConfig& cfg, std::uint64_t seed) {
  ExperimentReport rep;
  rep.suite = "interp";
  const std::size_t nb = std::min<std::size_t>(cfg.n, 2);
  const SelfAdjointOp r = nb == 1 ? SelfAdjointOp::diagonal({1.0})
                                  : SelfAdjointOp::diagonal({1.0, 0.5});
  const CameronMartinStructure cm = pseudo_inverse(r);

  InterpConfig icfg;
  icfg.alpha = cfg.alpha;
  icfg.grid_points = cfg.r_grid_points;
  icfg.seed = seed;
  icfg.env.multistarts = 4;
  icfg.env.inner_multistarts = 3;
  icfg.env.max_iterations = 200;

  std::vector<CylinderFunction> bounded;
  for (auto& f : standard_battery(nb))
    if (f.growth == CylinderFunction::Growth::bounded) bounded.push_back(std::move(f));

  for (const auto& f : bounded) {
    const InterpContext ctx = make_interp_context(f, cfg.alpha, cm, icfg);
    const InterpNormResult nrm = interp_norm(ctx, cm, icfg);
    double cap_res = 0.0, mono_res = 0.0, sup_res = 0.0;
    for (std::size_t i = 0; i < nrm.rows.size(); ++i) {
      const auto& row = nrm.rows[i];
      cap_res = std::max(cap_res,
                         row.value - nrm.theory_cap * std::pow(row.r, cfg.alpha));
      sup_res = std::max(sup_res, row.value - ctx.phi_sup);
      if (i) mono_res = std::max(mono_res, nrm.rows[i - 1].value - row.value);
    }
    rep.checks.push_back(residual_row("k_upper_theory_cap[" + f.name + "]", cap_res, 1e-9));
    rep.checks.push_back(residual_row("k_upper_monotone[" + f.name + "]", mono_res, 1e-12));
    rep.checks.push_back(residual_row("k_upper_le_sup[" + f.name + "]", sup_res, 1e-12));
    rep.checks.push_back(embedding_check(ctx, nrm));
    for (auto& row : holder_compose_check(f, cfg.alpha, cm, 8000, seed ^ 0xdd))
      rep.checks.push_back(std::move(row));
    rep.tables.push_back(nrm.to_table(cfg.alpha));
  }

  // degenerate R: the machinery reduces to the active coordinate
  if (nb == 2) {
    const CameronMartinStructure cmd = pseudo_inverse(SelfAdjointOp::diagonal({1.0, 0.0}));
    const CylinderFunction fd = make_cos_cylinder(basis_vector(2, 0));
    const InterpContext ctx = make_interp_context(fd, cfg.alpha, cmd, icfg);
    const InterpNormResult nrm = interp_norm(ctx, cmd, icfg);
    rep.checks.push_back(embedding_check(ctx, nrm));
  }

  // one-dimensional sandwich against the brute-force oracles
  {
    const CameronMartinStructure cm1 = pseudo_inverse(SelfAdjointOp::identity(1));
    const CylinderFunction f1 = make_cos_cylinder({1.0});
    InterpConfig i1 = icfg;
    i1.seed = seed ^ 0xee;
    const InterpContext ctx = make_interp_context(f1, cfg.alpha, cm1, i1);
    const InterpNormResult nrm = interp_norm(ctx, cm1, i1);
    std::vector<double> xs, phis;
    for (int i = 0; i <= 320; ++i) {
      const double x = -8.0 + 16.0 * static_cast<double>(i) / 320.0;
      xs.push_back(x);
      phis.push_back(std::cos(x));
    }
    double sandwich = 0.0, classical = 0.0, five_x = 0.0;
    for (const auto& row : nrm.rows) {
      const double lower = k_lower_1d(xs, phis, row.r, 2.0, 400);
      const double bf = k_classical_1d(xs, phis, row.r, 2.0, 400);
      sandwich = std::max(sandwich, lower - bf * (1.0 + 1e-9));
      classical = std::max(classical, bf - 1.05 * row.value);
      five_x = std::max(five_x, row.value - 5.0 * lower);
    }
    rep.checks.push_back(residual_row("k1d_oracle_sandwich", sandwich, 1e-12));
    rep.checks.push_back(residual_row("k1d_classical_le_aniso", classical, 1e-9));
    rep.checks.push_back(residual_row("k1d_within_5x_of_lower", five_x, 1e-9));
  }
  return rep;
}

using SuiteFn = ExperimentReport (*)(const ExperimentConfig&, std::uint64_t);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"gradcheck", suite_gradcheck}, {"malliavin", suite_malliavin},
      {"ibp", suite_ibp},             {"chaos", suite_chaos},
      {"lasry-lions", suite_lasry_lions}, {"interp", suite_interp},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suite_table()) out.push_back(name);
    return out;
  }();
  return names;
}

ExperimentReport run_suite(const ExperimentConfig& cfg) {
  cfg.validate();
  ExperimentReport rep;
  rep.suite = cfg.suite;
  rep.seed = cfg.seed;
  rep.version = kVersion;
  rep.config_echo = cfg.echo();
  for (std::size_t i = 0; i < suite_table().size(); ++i) {
    const auto& [name, fn] = suite_table()[i];
    if (cfg.suite != "all" && cfg.suite != name) continue;
    ExperimentReport sub = fn(cfg, suite_seed(cfg, i));
    const std::string prefix = cfg.suite == "all" ? name + ":" : "";
    for (auto& row : sub.checks) {
      row.name = prefix + row.name;
      rep.checks.push_back(std::move(row));
    }
    for (auto& row : sub.mc_rows) {
      row.name = prefix + row.name;
      rep.mc_rows.push_back(std::move(row));
    }
    for (auto& t : sub.tables) rep.tables.push_back(std::move(t));
  }
  return rep;
}

}  // namespace mkit
