#include "mkit/cylinder.hpp"

#include <cmath>

namespace mkit {

Vector CylinderFunction::project(const Vector& x) const {
  if (x.size() != ambient_dim())
    throw std::invalid_argument(name + ": dimension mismatch (got " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(ambient_dim()) + ")");
  Vector u(m());
  for (std::size_t i = 0; i < m(); ++i) u[i] = mkit::dot(x, directions[i]);
  return u;
}

double CylinderFunction::evaluate(const Vector& x) const { return base(project(x)); }

Vector CylinderFunction::grad_full(const Vector& x) const {
  if (smoothness < 1 || !grad_base)
    throw std::invalid_argument(name + ": gradient not available");
  Vector g = grad_base(project(x));
  Vector out(ambient_dim(), 0.0);
  for (std::size_t i = 0; i < m(); ++i)
    kernels::axpy(g[i], directions[i].data(), out.data(), out.size());
  return out;
}

Matrix CylinderFunction::hess_full(const Vector& x) const {
  if (smoothness < 2 || !hess_base)
    throw std::invalid_argument(name + ": Hessian not available");
  Matrix hb = hess_base(project(x));
  const std::size_t n = ambient_dim();
  Matrix out(n, n);
  for (std::size_t i = 0; i < m(); ++i)
    for (std::size_t j = 0; j < m(); ++j) {
      const double c = hb(i, j);
      if (c == 0.0) continue;
      for (std::size_t r = 0; r < n; ++r)
        kernels::axpy(c * directions[i][r], directions[j].data(), &out.data[r * n], n);
    }
  return out;
}

double fd_directional(const CylinderFunction& f, const Vector& x, const Vector& v,
                      const FDConfig& cfg) {
  const double s = cfg.first_step * (1.0 + mkit::norm(x));
  const double fp = f.evaluate(axpy(s, v, x));
  const double fm = f.evaluate(axpy(-s, v, x));
  return (fp - fm) / (2.0 * s);
}

double fd_second_directional(const CylinderFunction& f, const Vector& x, const Vector& v,
                             const Vector& w, const FDConfig& cfg) {
  const double s = cfg.second_step * (1.0 + mkit::norm(x));
  const double fpp = f.evaluate(axpy(s, w, axpy(s, v, x)));
  const double fpm = f.evaluate(axpy(-s, w, axpy(s, v, x)));
  const double fmp = f.evaluate(axpy(s, w, axpy(-s, v, x)));
  const double fmm = f.evaluate(axpy(-s, w, axpy(-s, v, x)));
  return (fpp - fpm - fmp + fmm) / (4.0 * s * s);
}

CylinderFunction make_linear(const Vector& a) {
  CylinderFunction f;
  f.name = "linear";
  f.directions = {a};
  f.base = [](const Vector& u) { return u[0]; };
  f.grad_base = [](const Vector&) { return Vector{1.0}; };
  f.hess_base = [](const Vector&) { return Matrix(1, 1); };
  f.growth = CylinderFunction::Growth::polynomial;
  f.degree_hint = 1;
  return f;
}

CylinderFunction make_half_sumsq(std::size_t n) {
  CylinderFunction f;
  f.name = "half_sumsq";
  for (std::size_t i = 0; i < n; ++i) f.directions.push_back(basis_vector(n, i));
  f.base = [](const Vector& u) { return 0.5 * kernels::sumsq(u.data(), u.size()); };
  f.grad_base = [](const Vector& u) { return u; };
  f.hess_base = [](const Vector& u) { return Matrix::identity(u.size()); };
  f.growth = CylinderFunction::Growth::polynomial;
  f.degree_hint = 2;
  return f;
}

CylinderFunction make_quadratic_form(const Matrix& a) {
  const std::size_t n = a.rows;
  CylinderFunction f;
  f.name = "quadratic_form";
  for (std::size_t i = 0; i < n; ++i) f.directions.push_back(basis_vector(n, i));
  f.base = [a](const Vector& u) { return 0.5 * mkit::dot(u, matvec(a, u)); };
  f.grad_base = [a](const Vector& u) {
    Vector g = matvec(a, u);
    Matrix at(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
      for (std::size_t j = 0; j < a.cols; ++j) at(j, i) = a(i, j);
    Vector gt = matvec(at, u);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = 0.5 * (g[i] + gt[i]);
    return g;
  };
  f.hess_base = [a](const Vector&) {
    Matrix h(a.rows, a.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
      for (std::size_t j = 0; j < a.cols; ++j) h(i, j) = 0.5 * (a(i, j) + a(j, i));
    return h;
  };
  f.growth = CylinderFunction::Growth::polynomial;
  f.degree_hint = 2;
  return f;
}

CylinderFunction make_cos_cylinder(const Vector& h, double freq) {
  CylinderFunction f;
  f.name = "cos_cylinder";
  f.directions = {h};
  f.base = [freq](const Vector& u) { return std::cos(freq * u[0]); };
  f.grad_base = [freq](const Vector& u) { return Vector{-freq * std::sin(freq * u[0])}; };
  f.hess_base = [freq](const Vector& u) {
    Matrix m(1, 1);
    m(0, 0) = -freq * freq * std::cos(freq * u[0]);
    return m;
  };
  f.growth = CylinderFunction::Growth::bounded;
  return f;
}

CylinderFunction make_cos_sin_product(const Vector& h1, const Vector& h2) {
  CylinderFunction f;
  f.name = "cos_sin_product";
  f.directions = {h1, h2};
  f.base = [](const Vector& u) { return std::cos(u[0]) * std::sin(u[1]); };
  f.grad_base = [](const Vector& u) {
    return Vector{-std::sin(u[0]) * std::sin(u[1]), std::cos(u[0]) * std::cos(u[1])};
  };
  f.hess_base = [](const Vector& u) {
    Matrix m(2, 2);
    m(0, 0) = -std::cos(u[0]) * std::sin(u[1]);
    m(0, 1) = m(1, 0) = -std::sin(u[0]) * std::cos(u[1]);
    m(1, 1) = -std::cos(u[0]) * std::sin(u[1]);
    return m;
  };
  f.growth = CylinderFunction::Growth::bounded;
  return f;
}

namespace {
// bump profile and its first two derivatives; zero outside |s| < 1
double bump_val(double s) {
  const double u = 1.0 - s * s;
  return (u > 0.0) ? std::exp(-1.0 / u) : 0.0;
}
double bump_d1(double s) {
  const double u = 1.0 - s * s;
  if (u <= 0.0) return 0.0;
  return bump_val(s) * (-2.0 * s / (u * u));
}
double bump_d2(double s) {
  const double u = 1.0 - s * s;
  if (u <= 0.0) return 0.0;
  const double a = -2.0 * s / (u * u);
  const double da = -2.0 / (u * u) - 8.0 * s * s / (u * u * u);
  return bump_val(s) * (a * a + da);
}
}  // namespace

CylinderFunction make_bump(const Vector& h) {
  CylinderFunction f;
  f.name = "bump";
  f.directions = {h};
  f.base = [](const Vector& u) { return bump_val(u[0]); };
  f.grad_base = [](const Vector& u) { return Vector{bump_d1(u[0])}; };
  f.hess_base = [](const Vector& u) {
    Matrix m(1, 1);
    m(0, 0) = bump_d2(u[0]);
    return m;
  };
  f.growth = CylinderFunction::Growth::bounded;
  return f;
}

CylinderFunction make_saturated_quadratic(const Vector& h) {
  CylinderFunction f;
  f.name = "saturated_quadratic";
  f.directions = {h};
  f.base = [](const Vector& u) {
    const double s = u[0];
    return s * s / (1.0 + s * s);
  };
  f.grad_base = [](const Vector& u) {
    const double s = u[0];
    const double d = 1.0 + s * s;
    return Vector{2.0 * s / (d * d)};
  };
  f.hess_base = [](const Vector& u) {
    const double s = u[0];
    const double d = 1.0 + s * s;
    Matrix m(1, 1);
    m(0, 0) = 2.0 * (1.0 - 3.0 * s * s) / (d * d * d);
    return m;
  };
  f.growth = CylinderFunction::Growth::bounded;
  return f;
}

std::vector<CylinderFunction> standard_battery(std::size_t n) {
  std::vector<CylinderFunction> out;
  Vector a(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) a[i] = 1.0 / static_cast<double>(i + 1);
  out.push_back(make_linear(a));
  out.push_back(make_half_sumsq(n));
  out.push_back(make_cos_cylinder(basis_vector(n, 0)));
  if (n >= 2) out.push_back(make_cos_sin_product(basis_vector(n, 0), basis_vector(n, 1)));
  out.push_back(make_bump(a));
  out.push_back(make_saturated_quadratic(basis_vector(n, n - 1)));
  return out;
}

}  // namespace mkit
