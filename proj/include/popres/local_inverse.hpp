#pragma once

#include <iosfwd>
#include <vector>

namespace popres {

// Binomial smearing matrix on weight levels 0..r: entry (i, j) is the
// probability that delta-thinning a weight-i level lands on weight j,
// C(i,j) delta^j (1-delta)^{i-j}. Lower triangular, rows sum to one.
struct NoiseMatrix {
  int r = 0;
  double delta = 0.0;
  std::vector<std::vector<double>> a;  // (r+1) x (r+1)
};

NoiseMatrix build_noise_matrix(double delta, int r);

std::vector<double> apply_noise_matrix(const NoiseMatrix& A,
                                       const std::vector<double>& v);

// Robust local inverse at level zero: v with (A v)_0 = 1, every other
// coordinate of A v at most epsilon in magnitude, and certified bounded
// sensitivity. residual is max_{i>=1} |(A v)_i|; sensitivity is the
// infinity norm of v.
struct LocalInverse {
  std::vector<double> v;
  double epsilon = 0.0;
  double residual = 0.0;
  double sensitivity = 0.0;
};

// Minimizes ||w||_inf subject to ||A w - e_0||_inf <= epsilon: bisection
// on the norm bound, each level probed with a feasibility LP
// (self-contained dense simplex, Bland's rule) whose vertex is certified
// against the untouched constraint data before it counts.
std::vector<double> solve_min_infnorm(const NoiseMatrix& A, double epsilon);

// Rescales w so the zeroth coordinate of A v is exactly one and validates
// the final accuracy. Expects w solved at the shrunken accuracy
// epsilon_final / (1 + epsilon_final); the division by alpha_0 then keeps
// the off-zero residual within epsilon_final.
LocalInverse normalize_zeroth(const std::vector<double>& w,
                              const NoiseMatrix& A, double epsilon_final);

// Composite: solve at epsilon/(1+epsilon), then normalize. Callers think
// in terms of the final guarantee epsilon.
LocalInverse local_inverse(double delta, int r, double epsilon);

// Debug dump of the matrix, the raw LP solution and the normalized
// inverse with its residual vector, one CSV row per level.
void dump_local_inverse_csv(std::ostream& out, const NoiseMatrix& A,
                            const std::vector<double>& w,
                            const LocalInverse& inv);

}  // namespace popres
