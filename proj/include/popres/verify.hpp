#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "popres/distribution.hpp"
#include "popres/downset.hpp"
#include "popres/rng.hpp"

namespace popres {

// Field self-check: exercises every pipeline stage against the exact
// brute-force computations at small n, so a deployed binary can certify
// itself on the machine it runs on.
struct VerifyOptions {
  int n = 10;         // cube dimension for the dense checks, capped at 14
  int k = 3;          // support size of the generated instances
  double mu = 0.8;
  double epsilon = 0.1;
  std::uint64_t seed = 0x5eedULL;
  int instances = 10;  // random instances per check
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

BitVec random_point(int n, Rng& rng);

// k distinct points; when with_origin is set the first point is 0^n, the
// shape every translated recovery instance has.
std::vector<BitVec> random_support(int n, int k, Rng& rng,
                                   bool with_origin = false);

// Random support with weights drawn uniformly from the simplex.
SparseDistribution random_sparse(int n, int k, Rng& rng,
                                 bool with_origin = false);

// Statement that zeta followed by the given transform restores the input
// exactly on integer values. Parameterized on the transform under test so
// a deliberately corrupted one is observed to fail.
using IntTransform = std::function<std::vector<std::int64_t>(
    const Downset&, const std::vector<std::int64_t>&)>;
CheckResult check_mobius_inverts_zeta(const Downset& ds,
                                      const std::vector<std::int64_t>& values,
                                      const IntTransform& mobius_fn);

std::vector<CheckResult> run_verify_suite(const VerifyOptions& opts);

}  // namespace popres
