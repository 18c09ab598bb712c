#include "popres/distribution.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace popres {

SparseDistribution::SparseDistribution(int n_dim, std::vector<BitVec> pts,
                                       std::vector<double> wts)
    : n(n_dim), points(std::move(pts)), weights(std::move(wts)) {
  if (points.empty())
    throw std::invalid_argument("SparseDistribution: empty support");
  if (points.size() != weights.size())
    throw std::invalid_argument("SparseDistribution: points/weights mismatch");
  std::unordered_set<BitVec, BitVecHash> seen;
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].dimension() != n)
      throw std::invalid_argument("SparseDistribution: dimension mismatch");
    if (!seen.insert(points[i]).second)
      throw std::invalid_argument("SparseDistribution: duplicate point");
    if (weights[i] < 0.0 || weights[i] > 1.0)
      throw std::invalid_argument("SparseDistribution: weight out of range");
    sum += weights[i];
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("SparseDistribution: weights do not sum to 1");
}

SparseDistribution translate(const SparseDistribution& dist,
                             const BitVec& x1) {
  std::vector<BitVec> pts;
  pts.reserve(dist.points.size());
  for (const BitVec& p : dist.points) pts.push_back(p ^ x1);
  return SparseDistribution(dist.n, std::move(pts), dist.weights);
}

}  // namespace popres
