#pragma once

#include <vector>

#include "popres/attenuated.hpp"
#include "popres/distribution.hpp"
#include "popres/filter_set.hpp"

namespace popres {

// Full table of a real function on the cube, slot x.to_u64() per point.
// Everything in this header is brute force behind explicit size guards;
// it exists to certify the sampling estimators, not to scale.
struct DenseFunction {
  int n = 0;
  std::vector<double> values;
};

DenseFunction dense_zero(int n);
DenseFunction dense_from_sparse(const SparseDistribution& f);
DenseFunction dense_from_monomial(const MonomialExpansion& e);
DenseFunction dense_from_character(const CharacterExpansion& e);

// f_hat(S) = sum_x f(x) chi_S(x).
double exact_fourier(const DenseFunction& f, const BitVec& S);

// Inverse of the coefficient map above: f(x) = 2^{-n} sum_S f_hat(S)
// chi_S(x), summed over all 2^n subsets.
double fourier_synthesis(const DenseFunction& f, const BitVec& x);

// g = f * (T_mu 1_E): the sparse distribution damped pointwise by the
// exact filter mass, zero off the support.
DenseFunction exact_g(const SparseDistribution& f, const FarSet& fs);

// sum_x a(x) b(x).
double exact_inner_product(const DenseFunction& a, const DenseFunction& b);

// Dense table of T_mu f for a sparse f, by exact butterflies.
DenseFunction exact_T_mu(const SparseDistribution& f, NoiseRate mu);

}  // namespace popres
