#include "popres/noise.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

namespace popres {

InsufficientSamplesError::InsufficientSamplesError(std::uint64_t required_,
                                                   std::uint64_t available_)
    : std::runtime_error("sample file too short: need " +
                         std::to_string(required_) + " samples, have " +
                         std::to_string(available_)),
      required(required_),
      available(available_) {}

NoiseRate::NoiseRate(double m) : mu(m) {
  if (!(m > 0.0) || m > 1.0)
    throw std::invalid_argument("NoiseRate: mu must lie in (0, 1]");
}

CoordKernel coord_kernel(NoiseRate mu, bool inverse) {
  double a = (1.0 + mu.mu) / 2.0;
  double b = (1.0 - mu.mu) / 2.0;
  if (!inverse) return CoordKernel{{{a, b}, {b, a}}};
  // det = a*a - b*b = mu, so the inverse keeps the symmetric shape with
  // the off-diagonal negated.
  double d = mu.mu;
  return CoordKernel{{{a / d, -b / d}, {-b / d, a / d}}};
}

BitVec sample_noise(NoiseRate mu, int n, Rng& rng) {
  BitVec e(n);
  double flip = (1.0 - mu.mu) / 2.0;
  for (int i = 0; i < n; ++i)
    if (rng.unit() < flip) e.set(i, true);
  return e;
}

NoisySampler::NoisySampler(SparseDistribution dist, NoiseRate mu,
                           std::uint64_t seed)
    : dist_(std::move(dist)),
      mu_(mu),
      seed_(seed),
      rng_(derive_seed(seed, 0, 0)) {
  cumulative_.reserve(dist_.size());
  double acc = 0.0;
  for (double w : dist_.weights) {
    acc += w;
    cumulative_.push_back(acc);
  }
  cumulative_.back() = 1.0;
}

BitVec NoisySampler::draw_with(Rng& rng) const {
  // Point selection first, then the noise bits, in a fixed order; the
  // translation-invariance of recovery relies on the draw sequence being
  // identical for a distribution and its translate under a shared seed.
  double u = rng.unit();
  std::size_t idx = static_cast<std::size_t>(
      std::lower_bound(cumulative_.begin(), cumulative_.end(), u) -
      cumulative_.begin());
  if (idx >= dist_.size()) idx = dist_.size() - 1;
  BitVec x = dist_.points[idx];
  double flip = (1.0 - mu_.mu) / 2.0;
  for (int i = 0; i < dist_.n; ++i)
    if (rng.unit() < flip) x.set(i, !x.get(i));
  return x;
}

BitVec NoisySampler::draw() {
  ++count_;
  return draw_with(rng_);
}

std::vector<Drawer> NoisySampler::open_task(
    std::uint64_t task_id, const std::vector<std::uint64_t>& counts) {
  std::vector<Drawer> out;
  out.reserve(counts.size());
  for (std::uint64_t w = 0; w < counts.size(); ++w) {
    auto rng = std::make_shared<Rng>(derive_seed(seed_, task_id + 1, w));
    out.push_back([this, rng]() { return draw_with(*rng); });
  }
  return out;
}

std::vector<Drawer> VectorSampleSource::open_task(
    std::uint64_t /*task_id*/, const std::vector<std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (std::uint64_t c : counts) total += c;
  if (cursor_ + total > samples_.size())
    throw InsufficientSamplesError(cursor_ + total, samples_.size());
  std::vector<Drawer> out;
  out.reserve(counts.size());
  std::uint64_t offset = cursor_;
  for (std::uint64_t c : counts) {
    auto pos = std::make_shared<std::uint64_t>(offset);
    std::uint64_t end = offset + c;
    out.push_back([this, pos, end]() {
      if (*pos >= end)
        throw std::logic_error("VectorSampleSource: drawer exhausted");
      return samples_[(*pos)++];
    });
    offset = end;
  }
  cursor_ += total;
  return out;
}

VectorSampleSource::VectorSampleSource(std::vector<BitVec> samples,
                                       double mu_value)
    : samples_(std::move(samples)), mu_(mu_value) {
  if (samples_.empty())
    throw std::invalid_argument("VectorSampleSource: no samples");
  n_ = samples_[0].dimension();
  for (const BitVec& s : samples_)
    if (s.dimension() != n_)
      throw std::invalid_argument("VectorSampleSource: dimension mismatch");
}

std::vector<double> apply_T_mu_dense(const std::vector<double>& f,
                                     NoiseRate mu) {
  std::size_t len = f.size();
  if (len == 0 || (len & (len - 1)) != 0)
    throw std::invalid_argument("apply_T_mu_dense: length not a power of two");
  int n = std::countr_zero(len);
  if (n > 20) throw std::invalid_argument("apply_T_mu_dense: n > 20");
  std::vector<double> out = f;
  double a = (1.0 + mu.mu) / 2.0;
  double b = (1.0 - mu.mu) / 2.0;
  for (int i = 0; i < n; ++i) {
    std::size_t stride = std::size_t{1} << i;
    for (std::size_t base = 0; base < len; base += stride * 2) {
      for (std::size_t j = base; j < base + stride; ++j) {
        double f0 = out[j];
        double f1 = out[j + stride];
        out[j] = a * f0 + b * f1;
        out[j + stride] = b * f0 + a * f1;
      }
    }
  }
  return out;
}

}  // namespace popres
