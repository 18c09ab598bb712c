#pragma once

#include <cstdint>
#include <vector>

#include "popres/distribution.hpp"
#include "popres/rng.hpp"
#include "popres/sample_source.hpp"

namespace popres {

// Retention parameter of the per-coordinate noise: each bit flips
// independently with probability (1-mu)/2, so mu = 1 is noiseless and
// mu -> 0 approaches uniform scrambling. mu = 0 itself is rejected since
// nothing is recoverable there.
struct NoiseRate {
  double mu;
  explicit NoiseRate(double m);
};

// 2x2 kernel of the single-coordinate smoothing operator, or its inverse.
// Forward rows are (keep, flip) probabilities; the inverse is obtained by
// direct 2x2 inversion and has max column abs sum 1/mu.
struct CoordKernel {
  double m[2][2];
};

CoordKernel coord_kernel(NoiseRate mu, bool inverse);

// One noise vector: each of the n bits is set independently with
// probability (1-mu)/2.
BitVec sample_noise(NoiseRate mu, int n, Rng& rng);

// Draws z = x + e with x picked from the sparse distribution by weight and
// e fresh noise. The stream is fully determined by (dist, mu, seed); the
// task interface opens derived per-worker streams for parallel estimation.
class NoisySampler : public SampleSource {
 public:
  NoisySampler(SparseDistribution dist, NoiseRate mu, std::uint64_t seed);

  BitVec draw();
  std::uint64_t draws() const { return count_; }

  int dimension() const override { return dist_.n; }
  double mu() const override { return mu_.mu; }
  std::vector<Drawer> open_task(
      std::uint64_t task_id,
      const std::vector<std::uint64_t>& counts) override;

  const SparseDistribution& distribution() const { return dist_; }
  std::uint64_t seed() const { return seed_; }

 private:
  BitVec draw_with(Rng& rng) const;

  SparseDistribution dist_;
  NoiseRate mu_;
  std::uint64_t seed_;
  Rng rng_;
  std::vector<double> cumulative_;
  std::uint64_t count_ = 0;
};

// Dense smoothing of a full table of 2^n values (n <= 20): one in-place
// two-point butterfly per coordinate. Mass is conserved because each
// butterfly row sums to one.
std::vector<double> apply_T_mu_dense(const std::vector<double>& f,
                                     NoiseRate mu);

}  // namespace popres
