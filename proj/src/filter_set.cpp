#include "popres/filter_set.hpp"

#include <cmath>
#include <stdexcept>

#include "popres/parallel.hpp"
#include "popres/rng.hpp"

namespace popres {

int far_threshold(NoiseRate mu, int k, double far_constant) {
  if (k < 1) throw std::invalid_argument("support size must be positive");
  if (!(far_constant > 0.0)) {
    throw std::invalid_argument("far constant must be positive");
  }
  const double raw =
      far_constant / (mu.mu * mu.mu) * std::log(2.0 * static_cast<double>(k));
  const int s = static_cast<int>(std::ceil(raw));
  return s < 1 ? 1 : s;
}

FarSet build_far_set(const std::vector<BitVec>& support, NoiseRate mu,
                     double far_constant) {
  if (support.empty()) {
    throw std::invalid_argument("far set needs a nonempty support");
  }
  FarSet fs;
  fs.n = support.front().dimension();
  fs.mu = mu;
  fs.k = static_cast<int>(support.size());
  fs.threshold = far_threshold(mu, fs.k, far_constant);
  for (const BitVec& p : support) {
    if (p.dimension() != fs.n) {
      throw std::invalid_argument("support points disagree on dimension");
    }
    if (p.popcount() >= fs.threshold) fs.far_points.push_back(p);
  }
  return fs;
}

bool in_E(const BitVec& y, const FarSet& fs) {
  if (y.dimension() != fs.n) {
    throw std::invalid_argument("in_E: dimension mismatch");
  }
  const int w = y.popcount();
  for (const BitVec& p : fs.far_points) {
    if (w > hamming_distance(p, y)) return false;
  }
  return true;
}

std::uint64_t upsilon_budget(double epsilon, double kappa) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("accuracy must lie in (0, 1)");
  }
  if (!(kappa > 0.0 && kappa < 1.0)) {
    throw std::invalid_argument("failure probability must lie in (0, 1)");
  }
  const double m = std::log(2.0 / kappa) / (2.0 * epsilon * epsilon);
  return static_cast<std::uint64_t>(std::ceil(m));
}

UpsilonEstimate estimate_upsilon(const FarSet& fs, double epsilon,
                                 double kappa, std::uint64_t seed,
                                 std::uint64_t task_id, int workers) {
  UpsilonEstimate out;
  out.samples = upsilon_budget(epsilon, kappa);
  if (fs.far_points.empty()) {
    // Filter accepts everything; skip the draws, the mean is exactly 1.
    out.value = 1.0;
    return out;
  }
  const auto counts = split_counts(out.samples, workers);
  const auto partials = run_worker_partials(workers, [&](int w) {
    Rng rng(derive_seed(seed, task_id, static_cast<std::uint64_t>(w)));
    std::uint64_t hits = 0;
    const std::uint64_t mine = counts[static_cast<std::size_t>(w)];
    for (std::uint64_t i = 0; i < mine; ++i) {
      if (in_E(sample_noise(fs.mu, fs.n, rng), fs)) ++hits;
    }
    return static_cast<double>(hits);
  });
  double total = 0.0;
  for (double p : partials) total += p;  // integer-valued, order-exact
  out.value = total / static_cast<double>(out.samples);
  return out;
}

double exact_T_mu_E(const BitVec& x, const FarSet& fs) {
  if (x.dimension() != fs.n) {
    throw std::invalid_argument("exact_T_mu_E: dimension mismatch");
  }
  if (fs.n > 20) {
    throw std::invalid_argument("exact_T_mu_E: dimension above the guard");
  }
  // No far constraints: the filter is the whole cube and the smoothed
  // indicator is exactly one everywhere.
  if (fs.far_points.empty()) return 1.0;
  const double flip = (1.0 - fs.mu.mu) / 2.0;
  const double keep = (1.0 + fs.mu.mu) / 2.0;
  std::vector<double> flip_pow(static_cast<std::size_t>(fs.n) + 1);
  std::vector<double> keep_pow(static_cast<std::size_t>(fs.n) + 1);
  flip_pow[0] = keep_pow[0] = 1.0;
  for (int i = 1; i <= fs.n; ++i) {
    flip_pow[i] = flip_pow[i - 1] * flip;
    keep_pow[i] = keep_pow[i - 1] * keep;
  }
  double total = 0.0;
  const std::uint64_t limit = std::uint64_t{1} << fs.n;
  for (std::uint64_t e = 0; e < limit; ++e) {
    const BitVec noise = BitVec::from_u64(fs.n, e);
    const BitVec y = x ^ noise;
    if (!in_E(y, fs)) continue;
    const int d = noise.popcount();
    total += flip_pow[d] * keep_pow[fs.n - d];
  }
  return total;
}

}  // namespace popres
