#include "mkit/operators.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "mkit/rng.hpp"

namespace mkit {

namespace {
constexpr double kSpectralTruncation = 1e-10;
constexpr double kSymmetryTol = 1e-10;
constexpr double kRangeTol = 1e-10;
}  // namespace

void SelfAdjointOp::finalize() {
  dim_ = eigenvalues_.size();
  if (dim_ == 0 || frame_.rows != dim_ || frame_.cols != dim_)
    throw std::invalid_argument("SelfAdjointOp: inconsistent spectral data");
  double max_abs = 0.0;
  for (double l : eigenvalues_) max_abs = std::max(max_abs, std::fabs(l));
  for (double& l : eigenvalues_)
    if (std::fabs(l) < kSpectralTruncation * max_abs) l = 0.0;
  non_negative_ = std::all_of(eigenvalues_.begin(), eigenvalues_.end(),
                              [](double l) { return l >= 0.0; });
  injective_ = std::all_of(eigenvalues_.begin(), eigenvalues_.end(),
                           [](double l) { return l != 0.0; });
  trace_ = kernels::sum(eigenvalues_.data(), dim_);
  op_norm_ = max_abs;
}

SelfAdjointOp SelfAdjointOp::from_dense(const Matrix& a) {
  if (a.rows != a.cols || a.rows == 0)
    throw std::invalid_argument("SelfAdjointOp: matrix must be square and nonempty");
  const std::size_t n = a.rows;
  double asym = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      asym = std::max(asym, std::fabs(a(i, j) - a(j, i)));
      scale = std::max(scale, std::fabs(a(i, j)));
    }
  if (scale > 0.0 && asym > kSymmetryTol * scale)
    throw std::invalid_argument("SelfAdjointOp: input is not symmetric (relative asymmetry " +
                                std::to_string(asym / scale) + ")");

  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = 0.5 * (a(i, j) + a(j, i));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("SelfAdjointOp: eigendecomposition failed");

  SelfAdjointOp op;
  op.eigenvalues_.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  op.frame_ = Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) op.frame_(i, j) = es.eigenvectors()(j, i);
  op.finalize();
  return op;
}

SelfAdjointOp SelfAdjointOp::from_spectrum(Vector eigenvalues, Matrix frame) {
  SelfAdjointOp op;
  op.eigenvalues_ = std::move(eigenvalues);
  op.frame_ = std::move(frame);
  op.finalize();
  return op;
}

SelfAdjointOp SelfAdjointOp::diagonal(const Vector& eigenvalues) {
  return from_spectrum(eigenvalues, Matrix::identity(eigenvalues.size()));
}

SelfAdjointOp SelfAdjointOp::identity(std::size_t n) {
  return diagonal(Vector(n, 1.0));
}

SelfAdjointOp SelfAdjointOp::rotated(const Vector& eigenvalues, std::uint64_t seed) {
  return from_spectrum(eigenvalues, random_orthonormal(eigenvalues.size(), seed));
}

Vector SelfAdjointOp::to_eigen_coords(const Vector& x) const {
  if (x.size() != dim_) throw std::invalid_argument("SelfAdjointOp: dimension mismatch");
  return mkit::matvec(frame_, x);
}

Vector SelfAdjointOp::from_eigen_coords(const Vector& c) const {
  Vector x(dim_, 0.0);
  for (std::size_t i = 0; i < dim_; ++i)
    kernels::axpy(c[i], &frame_.data[i * dim_], x.data(), dim_);
  return x;
}

Vector SelfAdjointOp::apply(const Vector& x) const {
  Vector c = to_eigen_coords(x);
  for (std::size_t i = 0; i < dim_; ++i) c[i] *= eigenvalues_[i];
  return from_eigen_coords(c);
}

Matrix SelfAdjointOp::dense() const {
  Matrix a(dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    const double* u = &frame_.data[i * dim_];
    const double l = eigenvalues_[i];
    if (l == 0.0) continue;
    for (std::size_t r = 0; r < dim_; ++r)
      kernels::axpy(l * u[r], u, &a.data[r * dim_], dim_);
  }
  return a;
}

SelfAdjointOp SelfAdjointOp::spectral_map(double (*f)(double)) const {
  Vector ev = eigenvalues_;
  for (double& l : ev) l = f(l);
  return from_spectrum(std::move(ev), frame_);
}

SelfAdjointOp SelfAdjointOp::sqrt() const {
  if (!non_negative_)
    throw std::invalid_argument("SelfAdjointOp::sqrt: operator has negative eigenvalues");
  return spectral_map([](double l) { return std::sqrt(l); });
}

std::string SelfAdjointOp::to_json() const {
  nlohmann::json j;
  j["dim"] = dim_;
  j["eigenvalues"] = eigenvalues_;
  std::vector<Vector> rows(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    rows[i].assign(frame_.data.begin() + i * dim_, frame_.data.begin() + (i + 1) * dim_);
  j["eigenvectors"] = rows;
  return j.dump(2);
}

SelfAdjointOp SelfAdjointOp::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  const std::size_t n = j.at("dim").get<std::size_t>();
  Vector ev = j.at("eigenvalues").get<Vector>();
  auto rows = j.at("eigenvectors").get<std::vector<Vector>>();
  if (ev.size() != n || rows.size() != n)
    throw std::invalid_argument("SelfAdjointOp: malformed JSON operator");
  Matrix frame(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw std::invalid_argument("SelfAdjointOp: malformed JSON eigenvector row");
    std::copy(rows[i].begin(), rows[i].end(), frame.data.begin() + i * n);
  }
  return from_spectrum(std::move(ev), std::move(frame));
}

Matrix random_orthonormal(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed, /*stream=*/0x0f);
  Eigen::MatrixXd g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.next_normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  // fix signs so the result is unique given the Gaussian draw
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  Matrix u(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) u(i, j) = q(j, i);
  return u;
}

CameronMartinStructure::CameronMartinStructure(SelfAdjointOp r) : r_(std::move(r)) {
  for (std::size_t i = 0; i < r_.dim(); ++i)
    if (r_.eigenvalues()[i] != 0.0) range_idx_.push_back(i);
}

Vector CameronMartinStructure::pinv_apply(const Vector& x) const {
  Vector c = r_.to_eigen_coords(x);
  for (std::size_t i = 0; i < r_.dim(); ++i) {
    const double l = r_.eigenvalues()[i];
    c[i] = (l == 0.0) ? 0.0 : c[i] / l;
  }
  return r_.from_eigen_coords(c);
}

Vector CameronMartinStructure::kernel_project(const Vector& x) const {
  Vector c = r_.to_eigen_coords(x);
  for (std::size_t i = 0; i < r_.dim(); ++i)
    if (r_.eigenvalues()[i] != 0.0) c[i] = 0.0;
  return r_.from_eigen_coords(c);
}

Vector CameronMartinStructure::range_project(const Vector& x) const {
  Vector c = r_.to_eigen_coords(x);
  for (std::size_t i = 0; i < r_.dim(); ++i)
    if (r_.eigenvalues()[i] == 0.0) c[i] = 0.0;
  return r_.from_eigen_coords(c);
}

void CameronMartinStructure::check_in_range(const Vector& x, const char* who) const {
  const double xn = mkit::norm(x);
  if (xn == 0.0) return;
  const double kn = mkit::norm(kernel_project(x));
  if (kn > kRangeTol * xn)
    throw std::invalid_argument(std::string(who) +
                                ": argument has a kernel component (relative norm " +
                                std::to_string(kn / xn) + ")");
}

double CameronMartinStructure::inner(const Vector& x, const Vector& y) const {
  check_in_range(x, "cm_inner");
  check_in_range(y, "cm_inner");
  return mkit::dot(pinv_apply(x), pinv_apply(y));
}

double CameronMartinStructure::norm(const Vector& x) const {
  check_in_range(x, "cm_norm");
  return mkit::norm(pinv_apply(x));
}

Vector CameronMartinStructure::hr_from_coords(const Vector& c) const {
  if (c.size() != rank())
    throw std::invalid_argument("hr_from_coords: expected rank(R) coordinates");
  Vector full(r_.dim(), 0.0);
  for (std::size_t j = 0; j < rank(); ++j) {
    const std::size_t i = range_idx_[j];
    full[i] = c[j] * r_.eigenvalues()[i];
  }
  return r_.from_eigen_coords(full);
}

Vector CameronMartinStructure::hr_to_coords(const Vector& x) const {
  check_in_range(x, "hr_to_coords");
  Vector full = r_.to_eigen_coords(x);
  Vector c(rank());
  for (std::size_t j = 0; j < rank(); ++j) {
    const std::size_t i = range_idx_[j];
    c[j] = full[i] / r_.eigenvalues()[i];
  }
  return c;
}

CameronMartinStructure pseudo_inverse(const SelfAdjointOp& r) {
  return CameronMartinStructure(r);
}

}  // namespace mkit
