#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "popres/attenuated.hpp"
#include "popres/bitvec.hpp"
#include "popres/sample_source.hpp"

namespace popres {

struct RecoveryConfig {
  double epsilon = 0.1;
  double kappa = 0.05;
  double far_constant = 2.0;
  // Interpolation radius: the theory-grade radius is astronomically large
  // at small mu, so it is capped here and the uncapped value is reported.
  int max_r = 24;
  int r_override = -1;          // >= 0 replaces the default radius
  double delta_override = -1.0; // > 0 replaces mu^2/16
  double eta_override = -1.0;   // > 0 replaces epsilon/16
  int workers = 1;
  bool normalize = false;
  std::uint64_t seed = 0;
};

struct AuditBudget {
  double eta_term = 0.0;   // off-origin leakage inside the ball
  double tail_term = 0.0;  // filtered mass beyond the ball
  double bound = 0.0;
};

// Claim budget for |<ell, g> - f(0) (T_mu 1_E)(0)|: the test function
// leaks at most eta on in-ball support and the filter damps out-of-ball
// support to e^{-mu^2 r / 2}, paid once per unit of Fourier L1 mass.
AuditBudget audit_error_budget(const EllFunction& ell, int r, double mu);

struct PointReport {
  BitVec target;
  bool ok = false;
  std::string error;
  double estimate = 0.0;
  double inner = 0.0;
  double upsilon = 0.0;
  double l1_norm = 0.0;
  int max_degree = 0;
  std::uint64_t support_size = 0;
  std::uint64_t downset_size = 0;
  int r = 0;
  // Radius the defaults would demand before capping; reported so the gap
  // between proof-grade and configured parameters stays visible.
  std::uint64_t r_uncapped = 0;
  int far_threshold = 0;
  std::uint64_t far_count = 0;
  double delta = 0.0;
  double eta = 0.0;
  std::uint64_t samples_inner = 0;
  std::uint64_t samples_upsilon = 0;
  AuditBudget audit;
};

struct RecoveryReport {
  std::vector<PointReport> rows;
  bool all_ok = false;
  bool normalized = false;
  std::vector<std::string> warnings;
};

// A recovery run that cannot produce a trustworthy estimate: the filter
// mass estimate fell below 1/4 where the construction guarantees 1/2.
class RecoveryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Radius the default rule asks for before capping, clamped to >= 0.
std::uint64_t default_radius_uncapped(double mu, int k, double epsilon);

// One point of the unknown distribution. `support` is the candidate
// support in original coordinates, `target` must be one of its points.
// Throws RecoveryError on a filter-mass abort; propagates LP and input
// errors. task_base separates the RNG streams of this point's estimation
// stages from every other point's.
PointReport recover_point(SampleSource& source,
                          const std::vector<BitVec>& support,
                          const BitVec& target, const RecoveryConfig& config,
                          std::uint64_t task_base = 0);

// Runs recover_point on every support point; per-point failures are
// recorded in the report instead of thrown.
RecoveryReport recover_distribution(SampleSource& source,
                                    const std::vector<BitVec>& support,
                                    const RecoveryConfig& config);

}  // namespace popres
