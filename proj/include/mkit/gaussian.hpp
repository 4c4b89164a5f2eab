#pragma once

// Sampling from N(0, Q) and the white-noise / hat maps of the Gaussian
// Hilbert space attached to the covariance operator Q.

#include <cstdint>

#include "mkit/operators.hpp"
#include "mkit/rng.hpp"

namespace mkit {

class GaussianSampler {
 public:
  GaussianSampler(SelfAdjointOp q, std::uint64_t seed);

  const SelfAdjointOp& Q() const { return q_; }
  std::uint64_t seed() const { return seed_; }

  // One draw x = Q^{1/2} xi; consecutive calls advance the stream.
  Vector sample();
  std::vector<Vector> sample_batch(std::size_t count);

  // Deterministic access: draw `index` of shard `shard` (stream seed ^ shard).
  Vector sample_at(std::uint64_t shard, std::uint64_t index) const;

  // The standard-normal coordinates xi of a draw, same indexing.
  Vector standard_at(std::uint64_t shard, std::uint64_t index) const;

  Vector from_standard(const Vector& xi) const;  // Q^{1/2} xi

 private:
  SelfAdjointOp q_;
  SelfAdjointOp q_sqrt_;
  std::uint64_t seed_;
  CounterRng rng_;
};

// W_z(x) = <Q^{-1/2} x, z>.  Requires Q injective (non-degenerate measure);
// as a random variable of x ~ N(0,Q) it is centered Gaussian with variance
// ||z||_H^2 and E[W_z W_w] = <z, w>_H.
double white_noise(const SelfAdjointOp& q, const Vector& z, const Vector& x);

// hat_h(x) = W_{Q^{-1/2} h}(x) for h in range(Q^{1/2}); variance
// <Q^{-1/2}h, Q^{-1/2}h>.  Defined also for degenerate Q, on the range.
double hat(const SelfAdjointOp& q, const Vector& h, const Vector& x);

}  // namespace mkit
