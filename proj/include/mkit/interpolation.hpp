#pragma once

// K-functional machinery between BUC(H) and Lip_{b,R}(H):
//   K(r, phi) = inf over phi = f + g of |f|_inf + r * (|g|_inf + [g]_R),
// bounded from above through the trivial decompositions and the Lasry-Lions
// decomposition f_r = phi - S(r^{2-alpha})phi, and (in one dimension) from
// below by a brute-force scan over Lipschitz classes.

#include "mkit/lasry_lions.hpp"

namespace mkit {

struct InterpConfig {
  double alpha = 0.5;
  std::size_t grid_points = 25;  // log-spaced r values
  double r_min = 1e-3;
  double r_max = 1e3;
  std::size_t sup_samples = 12;        // envelope evaluation points per r
  std::size_t lip_pairs = 6;           // increment pairs for [S phi]_R
  std::size_t cheap_samples = 10000;   // direct phi sampling (sup norms, seminorms)
  std::uint64_t seed = 0;
  EnvelopeConfig env;
};

// per-function data computed once and shared across the r grid
struct InterpContext {
  Objective phi;
  double alpha = 0.5;
  double phi_sup = 0.0;        // stratified estimate of |phi|_inf
  double phi_mid = 0.0;        // midrange constant over the sample
  double phi_osc_half = 0.0;   // |phi - phi_mid|_inf estimate
  double lip_seminorm = 0.0;   // [phi]_R
  double holder_seminorm = 0.0;  // [phi]_{R,alpha}
};

InterpContext make_interp_context(const CylinderFunction& f, double alpha,
                                  const CameronMartinStructure& cm,
                                  const InterpConfig& cfg);

struct KCandidate {
  std::string label;
  double value = 0.0;
  bool converged = true;
};

struct KUpperResult {
  double r = 0.0;
  double value = 0.0;      // min over candidates
  std::string used;        // label of the minimizing decomposition
  bool converged = true;   // optimizer flags of the winning candidate chain
  std::vector<KCandidate> candidates;
};

// certified upper bound on K(r, phi)
KUpperResult k_functional_upper(const InterpContext& ctx, double r,
                                const CameronMartinStructure& cm, const InterpConfig& cfg);

struct InterpNormResult {
  double value = 0.0;            // sup_r r^{-alpha} K_upper(r), monotone envelope
  bool converged = true;
  std::vector<KUpperResult> rows;  // after the monotone envelope
  double theory_cap = 0.0;         // (k1 + k2): LL-side bound on the norm
  Table to_table(double alpha) const;
};

// sup over the log-spaced r grid of r^{-alpha} K_upper(r); the raw upper
// bounds are replaced by their monotone envelope min_{s >= r} K_upper(s),
// which is still an upper bound because K(r, .) is nondecreasing in r
InterpNormResult interp_norm(const InterpContext& ctx, const CameronMartinStructure& cm,
                             const InterpConfig& cfg);

// forward embedding [phi]_{R,alpha} <= 3 |phi|_interp; one-sided-safe since
// the seminorm is estimated from below and the norm from above
CheckRow embedding_check(const InterpContext& ctx, const InterpNormResult& nrm);

// [phi]_{R,alpha} = [phi o R]_alpha for injective R, checked on matched
// magnitude strata; throws on degenerate R
std::vector<CheckRow> holder_compose_check(const CylinderFunction& f, double alpha,
                                           const CameronMartinStructure& cm,
                                           std::size_t samples, std::uint64_t seed);

// brute-force lower bound for the 1-D K-functional: for g with [g] = l one
// has |phi - g|_inf >= dist(phi, Lip_l) on any sample, and the distance on a
// point set is half the largest positive excess phi_i - phi_j - l |x_i - x_j|
double k_lower_1d(const std::vector<double>& xs, const std::vector<double>& phis,
                  double r, double ell_max, std::size_t ell_steps);

// classical 1-D upper bound: scans the optimal l-Lipschitz approximations
// g_l = (upper envelope + lower envelope)/2 over a dense l grid, plus the
// trivial constant decompositions
double k_classical_1d(const std::vector<double>& xs, const std::vector<double>& phis,
                      double r, double ell_max, std::size_t ell_steps);

}  // namespace mkit
