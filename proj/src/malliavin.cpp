#include "mkit/malliavin.hpp"

#include <cmath>

#include "json.hpp"
#include "mkit/rng.hpp"

namespace mkit {

std::vector<Vector> orthonormalize(std::vector<Vector> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      kernels::axpy(-mkit::dot(v[i], v[j]), v[j].data(), v[i].data(), v[i].size());
    const double n = mkit::norm(v[i]);
    if (n < 1e-12)
      throw std::invalid_argument("orthonormalize: directions are linearly dependent");
    kernels::scale(1.0 / n, v[i].data(), v[i].size());
  }
  return v;
}

SmoothRandomVariable::SmoothRandomVariable(std::string name,
                                           std::function<double(const Vector&)> f,
                                           std::function<Vector(const Vector&)> grad,
                                           std::vector<Vector> z, SelfAdjointOp q,
                                           CylinderFunction::Growth growth, int degree_hint)
    : name_(std::move(name)),
      f_(std::move(f)),
      grad_(std::move(grad)),
      z_(std::move(z)),
      q_(std::move(q)),
      q_sqrt_(q_.sqrt()),
      growth_(growth),
      degree_hint_(degree_hint) {
  if (z_.empty()) throw std::invalid_argument(name_ + ": needs at least one direction");
  for (std::size_t i = 0; i < z_.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double g = mkit::dot(z_[i], z_[j]);
      const double want = (i == j) ? 1.0 : 0.0;
      if (std::fabs(g - want) > 1e-12)
        throw std::invalid_argument(name_ +
                                    ": directions are not orthonormal; normalize first");
    }
}

Vector SmoothRandomVariable::coords(const Vector& xi_full) const {
  Vector xi(m());
  for (std::size_t i = 0; i < m(); ++i) xi[i] = mkit::dot(xi_full, z_[i]);
  return xi;
}

Vector SmoothRandomVariable::derivative(const Vector& xi_full, Picture picture) const {
  const Vector d = grad_(coords(xi_full));
  Vector out(z_[0].size(), 0.0);
  for (std::size_t i = 0; i < m(); ++i) {
    if (picture == Picture::cdp) {
      kernels::axpy(d[i], z_[i].data(), out.data(), out.size());
    } else {
      const Vector h = q_sqrt_.apply(z_[i]);
      kernels::axpy(d[i], h.data(), out.data(), out.size());
    }
  }
  return out;
}

double ChaosExpansion::coeff(const std::vector<int>& alpha) const {
  for (std::size_t i = 0; i < alphas.size(); ++i)
    if (alphas[i] == alpha) return coeffs[i];
  return 0.0;
}

std::string ChaosExpansion::to_json() const {
  nlohmann::json j;
  j["m"] = m;
  j["N"] = degree_cap;
  nlohmann::json arr = nlohmann::json::array();
  for (std::size_t i = 0; i < alphas.size(); ++i)
    arr.push_back({{"alpha", alphas[i]}, {"c", coeffs[i]}});
  j["coeffs"] = arr;
  j["tail_gap"] = tail_gap;
  return j.dump(2);
}

namespace {

int quad_nodes_for(const SmoothRandomVariable& f, int degree_cap) {
  const int deg = (f.degree_hint() >= 0) ? f.degree_hint() : degree_cap;
  return (degree_cap + deg + 1) / 2 + 2;
}

// iterate over the tensor grid of an m-axis rule, calling visit(idx)
template <typename Visit>
void tensor_grid(int m, int nodes, Visit&& visit) {
  std::vector<int> idx(m, 0);
  for (;;) {
    visit(idx);
    int axis = 0;
    while (axis < m) {
      if (++idx[axis] < nodes) break;
      idx[axis] = 0;
      ++axis;
    }
    if (axis == m) break;
  }
}

}  // namespace

ChaosExpansion chaos_project(const SmoothRandomVariable& f, int degree_cap) {
  const int m = static_cast<int>(f.m());
  if (m > 4) throw std::invalid_argument("chaos_project: m <= 4 required");
  if (degree_cap > 12) throw std::invalid_argument("chaos_project: degree cap <= 12 required");

  const int nodes = quad_nodes_for(f, degree_cap);
  const GaussHermiteRule rule = gauss_hermite(nodes);

  // per-axis Hermite values at each node
  std::vector<std::vector<Vector>> hv(nodes);
  for (int i = 0; i < nodes; ++i)
    hv[i].push_back(hermite_orthonormal_values(degree_cap, rule.nodes[i]));

  ChaosExpansion ce;
  ce.m = m;
  ce.degree_cap = degree_cap;
  ce.alphas = multi_indices(m, degree_cap);
  ce.coeffs.assign(ce.alphas.size(), 0.0);

  Vector xi(m);
  tensor_grid(m, nodes, [&](const std::vector<int>& idx) {
    double w = 1.0;
    for (int a = 0; a < m; ++a) {
      xi[a] = rule.nodes[idx[a]];
      w *= rule.weights[idx[a]];
    }
    const double fv = f.value(xi);
    ce.second_moment += w * fv * fv;
    for (std::size_t c = 0; c < ce.alphas.size(); ++c) {
      double basis = 1.0;
      for (int a = 0; a < m; ++a) basis *= hv[idx[a]][0][ce.alphas[c][a]];
      ce.coeffs[c] += w * fv * basis;
    }
  });

  ce.tail_gap = ce.second_moment - kernels::sumsq(ce.coeffs.data(), ce.coeffs.size());
  return ce;
}

DomainCheck domain_check(const SmoothRandomVariable& f, int degree_cap) {
  ChaosExpansion ce = chaos_project(f, degree_cap);
  const int m = static_cast<int>(f.m());
  const int nodes = quad_nodes_for(f, degree_cap) + 1;
  const GaussHermiteRule rule = gauss_hermite(nodes);

  // since the directions are orthonormal, ||DF||^2 = sum_i (d_i f)^2
  double lhs = 0.0;
  Vector xi(m);
  tensor_grid(m, nodes, [&](const std::vector<int>& idx) {
    double w = 1.0;
    for (int a = 0; a < m; ++a) {
      xi[a] = rule.nodes[idx[a]];
      w *= rule.weights[idx[a]];
    }
    const Vector d = f.partials(xi);
    lhs += w * kernels::sumsq(d.data(), d.size());
  });

  double rhs = 0.0;
  for (std::size_t c = 0; c < ce.alphas.size(); ++c) {
    int total = 0;
    for (int a : ce.alphas[c]) total += a;
    rhs += total * ce.coeffs[c] * ce.coeffs[c];
  }
  return {lhs, rhs};
}

IbpResult ibp_check(const SmoothRandomVariable& f, const Vector& h, std::size_t samples,
                    std::uint64_t seed, Picture picture) {
  if (samples == 0) throw std::invalid_argument("ibp_check: samples must be positive");
  const SelfAdjointOp& q = f.Q();
  if (picture == Picture::cdp && !q.injective())
    throw std::invalid_argument("ibp_check: CDP picture requires injective Q");

  // In standard coordinates xi ~ N(0, Id):
  //   CDP:   W(h)(x) = <xi, h>,            <DF, h>_H = sum_i d_i f <z_i, h>
  //   Gross: W(h) = hat h = <xi, Q^{-1/2}h>, <DF, h>_K = sum_i d_i f <z_i, Q^{-1/2}h>
  Vector zh = h;
  if (picture == Picture::gross) {
    CameronMartinStructure half = pseudo_inverse(q.sqrt());
    const double hn = mkit::norm(h);
    if (hn > 0.0 && mkit::norm(half.kernel_project(h)) > 1e-10 * hn)
      throw std::invalid_argument("ibp_check: h is outside the Cameron-Martin space");
    zh = half.pinv_apply(h);
  }

  const std::size_t n = q.dim();
  Vector proj(f.m());
  for (std::size_t i = 0; i < f.m(); ++i) proj[i] = mkit::dot(f.directions()[i], zh);

  double sum_l = 0.0, sum_r = 0.0, sum_d = 0.0, sum_d2 = 0.0;
  CounterRng rng(seed);
  Vector xi_full(n);
  for (std::size_t s = 0; s < samples; ++s) {
    for (double& v : xi_full) v = rng.next_normal();
    const Vector xi = f.coords(xi_full);
    const Vector d = f.partials(xi);
    const double lhs_s = mkit::dot(d, proj);
    const double rhs_s = f.value(xi) * mkit::dot(xi_full, zh);
    const double diff = lhs_s - rhs_s;
    sum_l += lhs_s;
    sum_r += rhs_s;
    sum_d += diff;
    sum_d2 += diff * diff;
  }
  const double ns = static_cast<double>(samples);
  IbpResult out;
  out.lhs = sum_l / ns;
  out.rhs = sum_r / ns;
  out.residual = sum_d / ns;
  const double var = std::max(0.0, sum_d2 / ns - (sum_d / ns) * (sum_d / ns));
  out.std_error = std::sqrt(var / ns);
  out.z_score = (out.std_error > 0.0) ? std::fabs(out.residual) / out.std_error : 0.0;
  return out;
}

double sobolev_norm_p(const SmoothRandomVariable& f, double p, Picture picture,
                      std::size_t samples, std::uint64_t seed) {
  if (p < 1.0) throw std::invalid_argument("sobolev_norm_p: p must be >= 1");
  const SelfAdjointOp& q = f.Q();
  if (picture == Picture::cdp && !q.injective())
    throw std::invalid_argument("sobolev_norm_p: CDP picture requires injective Q");
  CameronMartinStructure half = pseudo_inverse(q.sqrt());

  const std::size_t n = q.dim();
  double acc = 0.0;
  CounterRng rng(seed);
  Vector xi_full(n);
  for (std::size_t s = 0; s < samples; ++s) {
    for (double& v : xi_full) v = rng.next_normal();
    const Vector d = f.derivative(xi_full, picture);
    const double dn = (picture == Picture::cdp) ? mkit::norm(d)
                                                : mkit::norm(half.pinv_apply(d));
    acc += std::pow(std::fabs(f.value(f.coords(xi_full))), p) + std::pow(dn, p);
  }
  return acc / static_cast<double>(samples);
}

}  // namespace mkit
