#pragma once

// Cylinder test functions F(x) = f(<x,h_1>,...,<x,h_m>) with analytic
// derivatives up to order 2, plus the central finite-difference engine used
// as the independent oracle throughout the test suites.

#include <functional>
#include <string>

#include "mkit/linalg.hpp"

namespace mkit {

struct CylinderFunction {
  enum class Growth { bounded, polynomial };

  std::string name;
  std::vector<Vector> directions;                    // h_i in H, m >= 1
  std::function<double(const Vector&)> base;         // f : R^m -> R
  std::function<Vector(const Vector&)> grad_base;    // df/du_i
  std::function<Matrix(const Vector&)> hess_base;    // d2f/du_i du_j
  Growth growth = Growth::polynomial;
  int smoothness = 2;    // 1 or 2
  int degree_hint = -1;  // polynomial degree, -1 if not polynomial

  std::size_t ambient_dim() const { return directions.empty() ? 0 : directions[0].size(); }
  std::size_t m() const { return directions.size(); }

  Vector project(const Vector& x) const;  // (<x,h_1>,...,<x,h_m>)
  double evaluate(const Vector& x) const;
  Vector grad_full(const Vector& x) const;   // sum_i d_i f * h_i
  Matrix hess_full(const Vector& x) const;   // sum_ij d_ij f * h_i (x) h_j
};

struct FDConfig {
  // step = base_step * (1 + ||x||); defaults balance truncation/round-off
  // for central differences of first and second order.
  double first_step = 6.055454452393343e-06;   // eps^(1/3)
  double second_step = 1.2207031250000000e-04; // eps^(1/4)
};

double fd_directional(const CylinderFunction& f, const Vector& x, const Vector& v,
                      const FDConfig& cfg = {});

// central second difference of F along (v, w), oracle for the Hessian
double fd_second_directional(const CylinderFunction& f, const Vector& x, const Vector& v,
                             const Vector& w, const FDConfig& cfg = {});

// ---- canonical test-function library ----

CylinderFunction make_linear(const Vector& a);
CylinderFunction make_half_sumsq(std::size_t n);          // ||x||^2 / 2
CylinderFunction make_quadratic_form(const Matrix& a);    // <Ax,x>/2
CylinderFunction make_cos_cylinder(const Vector& h, double freq = 1.0);
CylinderFunction make_cos_sin_product(const Vector& h1, const Vector& h2);
CylinderFunction make_bump(const Vector& h);              // exp(-1/(1-u^2)) on |u|<1
CylinderFunction make_saturated_quadratic(const Vector& h);  // u^2/(1+u^2)

// the battery used by the verification suites (bounded + unbounded members)
std::vector<CylinderFunction> standard_battery(std::size_t n);

}  // namespace mkit
