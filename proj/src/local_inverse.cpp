#include "popres/local_inverse.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "popres/simplex.hpp"

namespace popres {

NoiseMatrix build_noise_matrix(double delta, int r) {
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("build_noise_matrix: delta must lie in (0,1)");
  if (r < 0) throw std::invalid_argument("build_noise_matrix: r < 0");
  NoiseMatrix A;
  A.r = r;
  A.delta = delta;
  A.a.assign(r + 1, std::vector<double>(r + 1, 0.0));
  A.a[0][0] = 1.0;
  // Binomial recursion: each level-i entry is a convex combination of the
  // two level-(i-1) entries, so values stay in [0,1] and rows keep summing
  // to one without ever forming large binomial coefficients.
  for (int i = 1; i <= r; ++i)
    for (int j = 0; j <= i; ++j)
      A.a[i][j] = (1.0 - delta) * A.a[i - 1][j] +
                  (j > 0 ? delta * A.a[i - 1][j - 1] : 0.0);
  return A;
}

std::vector<double> apply_noise_matrix(const NoiseMatrix& A,
                                       const std::vector<double>& v) {
  if (v.size() != A.a.size())
    throw std::invalid_argument("apply_noise_matrix: size mismatch");
  std::vector<double> out(v.size(), 0.0);
  for (std::size_t i = 0; i < A.a.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j <= i; ++j) s += A.a[i][j] * v[j];
    out[i] = s;
  }
  return out;
}

std::vector<double> solve_min_infnorm(const NoiseMatrix& A, double epsilon) {
  if (!(epsilon > 0.0))
    throw std::invalid_argument("solve_min_infnorm: epsilon must be positive");
  int r = A.r;
  std::size_t levels = static_cast<std::size_t>(r) + 1;

  // Work on y with w_j = base^j y_j, base = max((1-delta)/delta, 1). A's
  // exact inverse column is w_j = (-base)^j, so the vertices the solver
  // has to represent are O(1) per coordinate in y-space, and the
  // constraint block A_ij base^j = C(i,j)(1-delta)^i stays moderate too.
  // Posed in w directly, the tableau mixes delta^r with delta^{-r} and
  // the pivoting drowns in rounding once delta^r nears the pivot
  // tolerance.
  const double base = std::max((1.0 - A.delta) / A.delta, 1.0);
  std::vector<double> pw(levels, 1.0), inv_pw(levels, 1.0);
  for (std::size_t j = 1; j < levels; ++j) {
    pw[j] = pw[j - 1] * base;
    inv_pw[j] = inv_pw[j - 1] / base;
  }

  // Minimizing t directly would tie O(1) rows to the exponentially large
  // norm variable inside one tableau, which reintroduces the bad scaling
  // through the t column. Instead bisect on t and probe each level with a
  // feasibility LP in which t only appears on the right-hand side:
  //   u_j            <= base^{-j} t     (y_j = u_j - v_j, so |w_j| <= t)
  //   v_j            <= base^{-j} t
  //   sum_j A_ij base^j y_j  <= e0_i + epsilon
  //   -sum_j A_ij base^j y_j <= epsilon - e0_i
  const std::size_t nw = levels, rows = 4 * levels;
  const std::size_t ncols = 2 * nw + rows;
  std::vector<std::vector<double>> E(rows, std::vector<double>(ncols, 0.0));
  std::vector<double> b(rows, 0.0);
  // Among the feasible points the probe asks for the smallest sum of the
  // split parts, the l1 norm of y. An unguided phase 1 is free to answer
  // with a vertex of huge cancelling coordinates, whose certification
  // below would be hopelessly loose.
  std::vector<double> c(ncols, 0.0);
  for (std::size_t j = 0; j < 2 * nw; ++j) c[j] = 1.0;
  for (std::size_t j = 0; j < levels; ++j) {
    E[j][j] = 1.0;
    E[levels + j][nw + j] = 1.0;
  }
  for (std::size_t i = 0; i < levels; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double a = A.a[i][j] * pw[j];
      E[2 * levels + i][j] = a;
      E[2 * levels + i][nw + j] = -a;
      E[3 * levels + i][j] = -a;
      E[3 * levels + i][nw + j] = a;
    }
    double e0 = (i == 0) ? 1.0 : 0.0;
    b[2 * levels + i] = e0 + epsilon;
    b[3 * levels + i] = epsilon - e0;
  }
  for (std::size_t i = 0; i < rows; ++i) E[i][2 * nw + i] = 1.0;

  // A probe only counts as feasible when the vertex it returns, clamped
  // into the norm boxes, still satisfies the residual rows of the
  // untouched data. Clamping makes ||w||_inf <= t hold by construction:
  // solver noise of 1e-14 in y_20 is invisible to any row tolerance yet
  // turns into base^20 times that in w, so the boxes cannot be left to a
  // certificate. The residual certificate itself gets almost no slack,
  // because normalize_zeroth grants the end result only 1e-9 beyond
  // epsilon.
  std::vector<double> y(levels, 0.0);
  auto feasible_at = [&](double t) {
    for (std::size_t j = 0; j < levels; ++j) {
      b[j] = inv_pw[j] * t;
      b[levels + j] = inv_pw[j] * t;
    }
    SimplexResult res = solve_standard_form(E, b, c);
    if (res.status != SimplexStatus::optimal) return false;
    for (std::size_t j = 0; j < levels; ++j) {
      double cap = inv_pw[j] * t;
      y[j] = std::clamp(res.x[j] - res.x[nw + j], -cap, cap);
    }
    for (std::size_t i = 0; i < levels; ++i) {
      double acc = 0.0, mag = 0.0;
      for (std::size_t j = 0; j <= i; ++j) {
        double term = E[2 * levels + i][j] * y[j];
        acc += term;
        mag += std::abs(term);
      }
      double want = (i == 0) ? 1.0 : 0.0;
      if (std::abs(acc - want) > epsilon + 1e-10 + 8e-16 * mag) return false;
    }
    return true;
  };

  // The exact inverse w_j = (-base)^j is always feasible, so twice its
  // norm gives a safe upper end even with tight rows rounding badly.
  double lo = 0.0, hi = 2.0 * pw[levels - 1];
  if (!feasible_at(hi))
    throw std::runtime_error("solve_min_infnorm: LP did not reach an optimum");
  std::vector<double> best_y = y;
  for (int iter = 0; iter < 200 && hi - lo > 1e-12 * (1.0 + hi); ++iter) {
    double mid = 0.5 * (lo + hi);
    if (feasible_at(mid)) {
      hi = mid;
      best_y = y;
    } else {
      lo = mid;
    }
  }

  std::vector<double> w(levels);
  for (std::size_t j = 0; j < levels; ++j) w[j] = best_y[j] * pw[j];
  return w;
}

LocalInverse normalize_zeroth(const std::vector<double>& w,
                              const NoiseMatrix& A, double epsilon_final) {
  if (!(epsilon_final > 0.0))
    throw std::invalid_argument("normalize_zeroth: epsilon must be positive");
  std::vector<double> Aw = apply_noise_matrix(A, w);
  double alpha0 = Aw[0];
  if (!(std::abs(alpha0) > 1e-9))
    throw std::runtime_error("normalize_zeroth: zeroth coordinate vanished");
  LocalInverse inv;
  inv.epsilon = epsilon_final;
  inv.v.resize(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) inv.v[j] = w[j] / alpha0;
  inv.residual = 0.0;
  inv.sensitivity = 0.0;
  for (std::size_t i = 1; i < Aw.size(); ++i)
    inv.residual = std::max(inv.residual, std::abs(Aw[i] / alpha0));
  for (double x : inv.v) inv.sensitivity = std::max(inv.sensitivity, std::abs(x));
  if (inv.residual > epsilon_final + 1e-9)
    throw std::runtime_error(
        "normalize_zeroth: residual exceeds the accuracy target");
  return inv;
}

LocalInverse local_inverse(double delta, int r, double epsilon) {
  NoiseMatrix A = build_noise_matrix(delta, r);
  // Solving at the shrunken accuracy leaves room for the division by
  // alpha_0 in [1 - eps0, 1 + eps0] to still meet the final epsilon.
  double eps0 = epsilon / (1.0 + epsilon);
  std::vector<double> w = solve_min_infnorm(A, eps0);
  return normalize_zeroth(w, A, epsilon);
}

void dump_local_inverse_csv(std::ostream& out, const NoiseMatrix& A,
                            const std::vector<double>& w,
                            const LocalInverse& inv) {
  std::vector<double> Av = apply_noise_matrix(A, inv.v);
  out << "level,w,v,residual";
  for (int j = 0; j <= A.r; ++j) out << ",a" << j;
  out << "\n";
  for (int i = 0; i <= A.r; ++i) {
    double e0 = (i == 0) ? 1.0 : 0.0;
    out << i << "," << w[static_cast<std::size_t>(i)] << ","
        << inv.v[static_cast<std::size_t>(i)] << ","
        << Av[static_cast<std::size_t>(i)] - e0;
    for (int j = 0; j <= A.r; ++j)
      out << "," << A.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    out << "\n";
  }
}

}  // namespace popres
