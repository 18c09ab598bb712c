#pragma once

#include <vector>

#include "popres/bitvec.hpp"

namespace popres {

// Sparse probability distribution on the n-cube: a short list of distinct
// points with weights summing to one. The support is exhaustive; absent
// points carry zero mass.
struct SparseDistribution {
  int n = 0;
  std::vector<BitVec> points;
  std::vector<double> weights;

  SparseDistribution(int n_dim, std::vector<BitVec> pts,
                     std::vector<double> wts);

  std::size_t size() const { return points.size(); }
};

// XOR-translation by x1: the point x1 maps to the origin. Weights are
// carried over unchanged, so the operation is an exact involution.
SparseDistribution translate(const SparseDistribution& dist, const BitVec& x1);

}  // namespace popres
