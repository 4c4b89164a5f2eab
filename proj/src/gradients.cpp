#include "mkit/gradients.hpp"

#include <cmath>

#include "mkit/rng.hpp"

namespace mkit {

Vector Tensor3::apply(const Vector& v1, const Vector& v2) const {
  Vector out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      s += v1[j] * kernels::dot(&data[(i * n + j) * n], v2.data(), n);
    out[i] = s;
  }
  return out;
}

double power_iteration_norm(const Matrix& a, double tol, int restarts, std::uint64_t seed) {
  if (a.rows == 0 || a.cols == 0) return 0.0;
  Matrix at(a.cols, a.rows);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) at(j, i) = a(i, j);
  double best = 0.0;
  CounterRng rng(seed);
  for (int r = 0; r < restarts; ++r) {
    Vector v(a.cols);
    for (double& c : v) c = rng.next_normal();
    double nv = mkit::norm(v);
    if (nv == 0.0) continue;
    kernels::scale(1.0 / nv, v.data(), v.size());
    double sigma = 0.0;
    for (int it = 0; it < 500; ++it) {
      Vector w = matvec(at, matvec(a, v));
      const double nw = mkit::norm(w);
      if (nw == 0.0) {
        sigma = 0.0;
        break;
      }
      kernels::scale(1.0 / nw, w.data(), w.size());
      const double s = std::sqrt(nw);
      if (std::fabs(s - sigma) <= tol * (1.0 + s)) {
        sigma = s;
        break;
      }
      sigma = s;
      v = std::move(w);
    }
    best = std::max(best, sigma);
  }
  return best;
}

namespace {

constexpr double kSlotTol = 1e-8;

Matrix dense_pinv(const CameronMartinStructure& cm) {
  const auto& r = cm.R();
  const std::size_t n = r.dim();
  Matrix p(n, n);
  for (std::size_t idx : cm.range_indices()) {
    const double* u = &r.frame().data[idx * n];
    const double inv = 1.0 / r.eigenvalues()[idx];
    for (std::size_t row = 0; row < n; ++row)
      kernels::axpy(inv * u[row], u, &p.data[row * n], n);
  }
  return p;
}

// orthonormal basis of the tagged space, as ambient vectors
std::vector<Vector> space_basis(MultilinearForm::Space sp, const CameronMartinStructure& cm) {
  const auto& r = cm.R();
  const std::size_t n = r.dim();
  std::vector<Vector> basis;
  switch (sp) {
    case MultilinearForm::Space::ambient:
      for (std::size_t i = 0; i < n; ++i) basis.push_back(basis_vector(n, i));
      break;
    case MultilinearForm::Space::ker_perp:
      for (std::size_t idx : cm.range_indices()) {
        Vector u(r.frame().data.begin() + idx * n, r.frame().data.begin() + (idx + 1) * n);
        basis.push_back(std::move(u));
      }
      break;
    case MultilinearForm::Space::hr:
      for (std::size_t idx : cm.range_indices()) {
        Vector u(r.frame().data.begin() + idx * n, r.frame().data.begin() + (idx + 1) * n);
        basis.push_back(r.eigenvalues()[idx] * u);
      }
      break;
  }
  return basis;
}

double space_inner(MultilinearForm::Space sp, const CameronMartinStructure& cm, const Vector& a,
                   const Vector& b) {
  if (sp == MultilinearForm::Space::hr) return mkit::dot(cm.pinv_apply(a), cm.pinv_apply(b));
  return mkit::dot(a, b);
}

}  // namespace

double form_norm(const MultilinearForm& a, const CameronMartinStructure& cm, double tol,
                 int restarts) {
  const auto basis = space_basis(a.space, cm);
  const std::size_t d = basis.size();
  switch (a.order) {
    case 0:
      return std::sqrt(space_inner(a.space, cm, a.vec, a.vec));
    case 1: {
      Matrix b(d, d);
      for (std::size_t j = 0; j < d; ++j) {
        Vector img = matvec(a.mat, basis[j]);
        for (std::size_t i = 0; i < d; ++i) b(i, j) = space_inner(a.space, cm, basis[i], img);
      }
      return power_iteration_norm(b, tol, restarts);
    }
    case 2: {
      // reduce to coordinates, then alternate power iteration over the slots
      Tensor3 t(d);
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) {
          Vector img = a.ten.apply(basis[j], basis[k]);
          for (std::size_t i = 0; i < d; ++i)
            t.at(i, j, k) = space_inner(a.space, cm, basis[i], img);
        }
      double best = 0.0;
      CounterRng rng(777);
      for (int r = 0; r < restarts; ++r) {
        Vector v1(d), v2(d);
        for (double& c : v1) c = rng.next_normal();
        for (double& c : v2) c = rng.next_normal();
        auto normalize = [](Vector& v) {
          const double nv = mkit::norm(v);
          if (nv > 0.0) kernels::scale(1.0 / nv, v.data(), v.size());
        };
        normalize(v1);
        normalize(v2);
        double sigma = 0.0;
        for (int it = 0; it < 200; ++it) {
          // matrix B2 = A(., v2): B2[i][j] = t(i,j,k) v2_k
          Matrix b2(d, d);
          for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
              b2(i, j) = kernels::dot(&t.data[(i * d + j) * d], v2.data(), d);
          // best v1 for fixed v2: top right-singular vector of b2
          Matrix b2t(d, d);
          for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) b2t(j, i) = b2(i, j);
          Vector w = matvec(b2t, matvec(b2, v1));
          normalize(w);
          v1 = w;
          // matrix B1 = A(v1, .): B1[i][k] = v1_j t(i,j,k)
          Matrix b1(d, d);
          for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k) {
              double s = 0.0;
              for (std::size_t j = 0; j < d; ++j) s += v1[j] * t.at(i, j, k);
              b1(i, k) = s;
            }
          Matrix b1t(d, d);
          for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k) b1t(k, i) = b1(i, k);
          Vector w2 = matvec(b1t, matvec(b1, v2));
          normalize(w2);
          v2 = w2;
          const double s = mkit::norm(t.apply(v1, v2));
          if (std::fabs(s - sigma) <= tol * (1.0 + s)) {
            sigma = s;
            break;
          }
          sigma = s;
        }
        best = std::max(best, sigma);
      }
      return best;
    }
    default:
      throw std::invalid_argument("form_norm: unsupported order");
  }
}

Vector grad_R(const CylinderFunction& f, const Vector& x, const CameronMartinStructure& cm) {
  return cm.R().apply(f.grad_full(x));
}

Vector grad_HR(const CylinderFunction& f, const Vector& x, const CameronMartinStructure& cm) {
  return cm.R().apply(cm.R().apply(f.grad_full(x)));
}

MultilinearForm hess_R(const CylinderFunction& f, const Vector& x,
                       const CameronMartinStructure& cm) {
  Matrix h = f.hess_full(x);
  Matrix rd = cm.R().dense();
  MultilinearForm out;
  out.order = 1;
  out.space = MultilinearForm::Space::ker_perp;
  out.mat = matmul(rd, matmul(h, rd));
  return out;
}

MultilinearForm hess_HR(const CylinderFunction& f, const Vector& x,
                        const CameronMartinStructure& cm) {
  Matrix h = f.hess_full(x);
  Matrix rd = cm.R().dense();
  MultilinearForm out;
  out.order = 1;
  out.space = MultilinearForm::Space::hr;
  out.mat = matmul(matmul(rd, rd), h);
  return out;
}

MultilinearForm transport_Tn(const MultilinearForm& a, const CameronMartinStructure& cm, int n) {
  if (n != a.order)
    throw std::invalid_argument("transport_Tn: order mismatch");
  MultilinearForm out;
  out.order = n;
  out.space = MultilinearForm::Space::hr;
  const Matrix rd = cm.R().dense();
  const Matrix pd = dense_pinv(cm);
  switch (n) {
    case 0: {
      const double vn = mkit::norm(a.vec);
      if (vn > 0.0 && mkit::norm(cm.kernel_project(a.vec)) > kSlotTol * vn)
        throw std::invalid_argument("transport_Tn: vector has kernel support");
      out.vec = cm.R().apply(a.vec);
      return out;
    }
    case 1: {
      const double fn = frobenius_norm(a.mat);
      if (fn > 0.0) {
        // slot support check: the form must annihilate ker R and map into
        // (ker R)^perp
        Matrix range_proj = matmul(rd, pd);
        Matrix ker(rd.rows, rd.cols);
        for (std::size_t i = 0; i < rd.rows; ++i) ker(i, i) = 1.0;
        for (std::size_t i = 0; i < rd.rows; ++i)
          for (std::size_t j = 0; j < rd.cols; ++j) ker(i, j) -= range_proj(i, j);
        if (frobenius_norm(matmul(a.mat, ker)) > kSlotTol * fn ||
            frobenius_norm(matmul(ker, a.mat)) > kSlotTol * fn)
          throw std::invalid_argument("transport_Tn: form has kernel-slot support");
      }
      out.mat = matmul(rd, matmul(a.mat, pd));
      return out;
    }
    case 2: {
      const std::size_t d = a.ten.n;
      Tensor3 t(d);
      // contract argument slots with pinv and the value slot with R
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t k = 0; k < d; ++k) {
            double s = 0.0;
            for (std::size_t i2 = 0; i2 < d; ++i2)
              for (std::size_t j2 = 0; j2 < d; ++j2)
                for (std::size_t k2 = 0; k2 < d; ++k2)
                  s += rd(i, i2) * a.ten.at(i2, j2, k2) * pd(j2, j) * pd(k2, k);
            t.at(i, j, k) = s;
          }
      out.ten = std::move(t);
      return out;
    }
    default:
      throw std::invalid_argument("transport_Tn: n must be 0, 1 or 2");
  }
}

}  // namespace mkit
