#pragma once

// Smooth cylinder random variables F = f(W_{z_1},...,W_{z_m}) on the
// Gaussian space N(0,Q), their Malliavin derivative in the two pictures
// (Gross: values in the Cameron-Martin space; Cannarsa-Da Prato: values in
// H), Hermite chaos projection, Sobolev norms and integration-by-parts
// verification.

#include <string>

#include "mkit/cylinder.hpp"
#include "mkit/gaussian.hpp"
#include "mkit/hermite.hpp"
#include "mkit/operators.hpp"

namespace mkit {

enum class Picture { gross, cdp };

// modified Gram-Schmidt in the Euclidean inner product
std::vector<Vector> orthonormalize(std::vector<Vector> v);

class SmoothRandomVariable {
 public:
  // z_i must be pairwise orthonormal in H (Gram matrix = Id to 1e-12), so
  // that (W_{z_1},...,W_{z_m}) are i.i.d. standard Gaussians.  For the CDP
  // picture Q must be injective.
  SmoothRandomVariable(std::string name, std::function<double(const Vector&)> f,
                       std::function<Vector(const Vector&)> grad, std::vector<Vector> z,
                       SelfAdjointOp q, CylinderFunction::Growth growth, int degree_hint = -1);

  const std::string& name() const { return name_; }
  std::size_t m() const { return z_.size(); }
  const SelfAdjointOp& Q() const { return q_; }
  const std::vector<Vector>& directions() const { return z_; }
  CylinderFunction::Growth growth() const { return growth_; }
  int degree_hint() const { return degree_hint_; }

  // evaluation through the m i.i.d. standard Gaussian coordinates
  double value(const Vector& xi) const { return f_(xi); }
  Vector partials(const Vector& xi) const { return grad_(xi); }

  // coordinates xi_i = <xi_full, z_i> of a full standard-normal draw
  Vector coords(const Vector& xi_full) const;

  // DF as an element of the picture's Hilbert space: CDP gives
  // sum_i d_i f * z_i in H, Gross gives sum_i d_i f * Q^{1/2} z_i in K.
  Vector derivative(const Vector& xi_full, Picture picture) const;

 private:
  std::string name_;
  std::function<double(const Vector&)> f_;
  std::function<Vector(const Vector&)> grad_;
  std::vector<Vector> z_;
  SelfAdjointOp q_;
  SelfAdjointOp q_sqrt_;
  CylinderFunction::Growth growth_;
  int degree_hint_;
};

struct ChaosExpansion {
  int m = 0;
  int degree_cap = 0;
  std::vector<std::vector<int>> alphas;
  Vector coeffs;       // same order as alphas
  double second_moment = 0.0;  // E[F^2] by quadrature
  double tail_gap = 0.0;       // E[F^2] - sum c^2

  double coeff(const std::vector<int>& alpha) const;
  std::string to_json() const;
};

// Tensorized Gauss-Hermite projection onto the orthonormal Hermite basis.
// Requires m <= 4 and degree_cap <= 12.
ChaosExpansion chaos_project(const SmoothRandomVariable& f, int degree_cap);

struct DomainCheck {
  double lhs;  // E[ ||DF||^2 ] by quadrature
  double rhs;  // sum_n n * sum_{|alpha|=n} c_alpha^2
};

DomainCheck domain_check(const SmoothRandomVariable& f, int degree_cap);

struct IbpResult {
  double lhs;       // E[ <DF, h> ]
  double rhs;       // E[ F W(h) ]
  double residual;  // lhs - rhs
  double std_error; // standard error of the per-sample difference
  double z_score;
};

// Monte-Carlo check of E[<DF,h>] = E[F W(h)] in the given picture; h lives
// in the picture's Hilbert space (H for CDP, the Cameron-Martin space for
// Gross).
IbpResult ibp_check(const SmoothRandomVariable& f, const Vector& h, std::size_t samples,
                    std::uint64_t seed, Picture picture = Picture::cdp);

// Monte-Carlo estimate of ||F||^p in the 1,p Sobolev norm of the picture:
// E[|F|^p] + E[||DF||^p].
double sobolev_norm_p(const SmoothRandomVariable& f, double p, Picture picture,
                      std::size_t samples, std::uint64_t seed);

}  // namespace mkit
