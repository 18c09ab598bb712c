#pragma once

#include <cstdint>

#include "popres/attenuated.hpp"
#include "popres/bitvec.hpp"
#include "popres/filter_set.hpp"
#include "popres/parallel.hpp"
#include "popres/sample_source.hpp"

namespace popres {

// Hoeffding budget for a mean of values bounded by per_S_bound in absolute
// value: M = ceil(2 b^2 ln(2/kappa) / eps^2).
struct EstimatorBudget {
  double epsilon = 0.0;
  double kappa = 0.0;
  std::uint64_t M = 0;
  double per_S_bound = 1.0;
};

EstimatorBudget make_budget(double epsilon, double kappa, double per_S_bound);

// Plain Fourier coefficient from noisy samples: mean of mu^{-|S|} chi(S, z)
// over M draws z. The attenuation of the channel is undone by the fixed
// per-sample factor, so the mean is unbiased for f_hat(S).
double estimate_fourier(SampleSource& source, const BitVec& S,
                        const EstimatorBudget& budget,
                        const ParallelConfig& par = {});

// Per-sample kernel for the filtered coefficient g_hat(S), where
// g = f * (T_mu 1_E). Works on the 2^{|S|}-point block of points agreeing
// with z outside S: unwind the noise on the S coordinates, apply the
// character sign, re-apply the noise, then total the entries that pass the
// filter. Magnitude never exceeds (1/mu)^{|S|}.
double attenuated_kernel(const BitVec& z, const BitVec& S, NoiseRate mu,
                         const FarSet& fs, int max_set_bits = 24);

struct GHatEstimate {
  BitVec S;
  double value = 0.0;
  EstimatorBudget budget;
};

GHatEstimate estimate_g_hat(SampleSource& source, const BitVec& S,
                            const FarSet& fs, const EstimatorBudget& budget,
                            const ParallelConfig& par = {});

// Sample count that makes every coefficient of the expansion accurate to
// epsilon / l1_norm simultaneously, confidence split uniformly across the
// support by a union bound.
std::uint64_t inner_product_budget(const CharacterExpansion& ell_hat,
                                   double mu, double epsilon, double kappa);

struct InnerProductEstimate {
  double value = 0.0;
  std::uint64_t samples = 0;
  double l1_norm = 0.0;
  int max_degree = 0;
  std::uint64_t support_size = 0;
};

// <ell, g> = sum_S ell_S g_hat(S) over the character support, all
// coefficients estimated from one shared batch of draws.
InnerProductEstimate estimate_inner_product(SampleSource& source,
                                            const EllFunction& ell,
                                            const FarSet& fs, double epsilon,
                                            double kappa,
                                            const ParallelConfig& par = {});

}  // namespace popres
