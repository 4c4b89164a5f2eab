#include "mkit/gaussian.hpp"

namespace mkit {

GaussianSampler::GaussianSampler(SelfAdjointOp q, std::uint64_t seed)
    : q_(std::move(q)), q_sqrt_(q_.sqrt()), seed_(seed), rng_(seed) {
  if (!q_.non_negative())
    throw std::invalid_argument("GaussianSampler: covariance must be non-negative");
}

Vector GaussianSampler::from_standard(const Vector& xi) const { return q_sqrt_.apply(xi); }

Vector GaussianSampler::sample() {
  Vector xi(q_.dim());
  for (double& v : xi) v = rng_.next_normal();
  return from_standard(xi);
}

std::vector<Vector> GaussianSampler::sample_batch(std::size_t count) {
  std::vector<Vector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample());
  return out;
}

Vector GaussianSampler::standard_at(std::uint64_t shard, std::uint64_t index) const {
  CounterRng r(seed_ ^ shard);
  r.set_counter(index * q_.dim());
  Vector xi(q_.dim());
  for (double& v : xi) v = r.next_normal();
  return xi;
}

Vector GaussianSampler::sample_at(std::uint64_t shard, std::uint64_t index) const {
  return from_standard(standard_at(shard, index));
}

double white_noise(const SelfAdjointOp& q, const Vector& z, const Vector& x) {
  if (!q.non_negative())
    throw std::invalid_argument("white_noise: covariance must be non-negative");
  if (!q.injective())
    throw std::invalid_argument(
        "white_noise: degenerate covariance; use hat() on the range of Q^{1/2}");
  CameronMartinStructure half = pseudo_inverse(q.sqrt());
  return mkit::dot(half.pinv_apply(x), z);
}

double hat(const SelfAdjointOp& q, const Vector& h, const Vector& x) {
  if (!q.non_negative())
    throw std::invalid_argument("hat: covariance must be non-negative");
  CameronMartinStructure half = pseudo_inverse(q.sqrt());
  const double hn = mkit::norm(h);
  if (hn > 0.0) {
    const double kn = mkit::norm(half.kernel_project(h));
    if (kn > 1e-10 * hn)
      throw std::invalid_argument("hat: h is outside range(Q^{1/2})");
  }
  // hat_h = W_z with z = Q^{-1/2} h; on samples (which lie in the range of
  // Q^{1/2}) this is <Q^{-1/2}h, Q^{-1/2}x>.
  return mkit::dot(half.pinv_apply(h), half.pinv_apply(x));
}

}  // namespace mkit
