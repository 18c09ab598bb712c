#pragma once

#include <cstdint>
#include <vector>

#include "popres/bitvec.hpp"
#include "popres/noise.hpp"

namespace popres {

// Distance filter around the origin. A point y passes when it sits at
// least as close to the origin as to every far support point; far means
// Hamming weight at or above the threshold. Support points below the
// threshold are dropped from the constraint list entirely: their noise
// mass near the origin is handled by the test function, not the filter.
struct FarSet {
  int n = 0;
  NoiseRate mu{1.0};
  int k = 0;          // support size the threshold was computed from
  int threshold = 1;  // minimum weight that makes a point far
  std::vector<BitVec> far_points;
};

// Threshold rule: s = max(1, ceil((c/mu^2) ln(2k))) with c the far
// constant. At the default c = 2 every far point keeps noise mass at most
// exp(-mu^2 s / 2) <= 1/(2k) inside the filter, so the union over the
// support eats at most half the origin's mass.
int far_threshold(NoiseRate mu, int k, double far_constant);

// `support` must already be translated so the recovery target is the
// origin; the origin's own entry never qualifies as far.
FarSet build_far_set(const std::vector<BitVec>& support, NoiseRate mu,
                     double far_constant = 2.0);

bool in_E(const BitVec& y, const FarSet& fs);

// Two-sided Hoeffding count for a [0,1] mean at accuracy eps, confidence
// 1 - kappa.
std::uint64_t upsilon_budget(double epsilon, double kappa);

struct UpsilonEstimate {
  double value = 0.0;
  std::uint64_t samples = 0;
};

// Monte-Carlo estimate of (T_mu 1_E)(0): the fraction of noise draws that
// land inside the filter. Uses noise draws only, no access to the unknown
// distribution. Deterministic for fixed (seed, task_id, workers).
UpsilonEstimate estimate_upsilon(const FarSet& fs, double epsilon,
                                 double kappa, std::uint64_t seed,
                                 std::uint64_t task_id = 0, int workers = 1);

// Exact (T_mu 1_E)(x) by enumerating all 2^n noise outcomes; n <= 20.
double exact_T_mu_E(const BitVec& x, const FarSet& fs);

}  // namespace popres
