#include "mkit/hermite.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace mkit {

Vector hermite_orthonormal_values(int degree_cap, double x) {
  Vector h(degree_cap + 1);
  h[0] = 1.0;
  if (degree_cap >= 1) h[1] = x;
  for (int n = 1; n < degree_cap; ++n)
    h[n + 1] = (x * h[n] - std::sqrt(static_cast<double>(n)) * h[n - 1]) /
               std::sqrt(static_cast<double>(n + 1));
  return h;
}

GaussHermiteRule gauss_hermite(int count) {
  if (count < 1) throw std::invalid_argument("gauss_hermite: count must be >= 1");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(count, count);
  for (int k = 1; k < count; ++k) {
    const double b = std::sqrt(static_cast<double>(k));
    j(k - 1, k) = b;
    j(k, k - 1) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  GaussHermiteRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  for (int i = 0; i < count; ++i) {
    rule.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = v0 * v0;
  }
  return rule;
}

namespace {
void collect(int m, int cap, std::vector<int>& cur, int used,
             std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == m) {
    out.push_back(cur);
    return;
  }
  for (int d = 0; d + used <= cap; ++d) {
    cur.push_back(d);
    collect(m, cap, cur, used + d, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<std::vector<int>> multi_indices(int m, int degree_cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  collect(m, degree_cap, cur, 0, out);
  return out;
}

}  // namespace mkit
