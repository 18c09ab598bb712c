#include "popres/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace popres {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kDualTol = 1e-8;

enum class PhaseEnd { optimal, unbounded, iteration_limit };

struct Tableau {
  std::size_t rows = 0;
  std::size_t cols = 0;  // structural + artificial columns, rhs excluded
  std::vector<std::vector<double>> t;  // rows x (cols + 1), rhs last
  std::vector<std::size_t> basis;      // basic column per row

  double rhs(std::size_t i) const { return t[i][cols]; }

  void pivot(std::size_t pr, std::size_t pc) {
    double p = t[pr][pc];
    for (double& v : t[pr]) v /= p;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pr) continue;
      double f = t[i][pc];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[pr][j];
      t[i][pc] = 0.0;
    }
    basis[pr] = pc;
  }
};

// Reduced costs recomputed from scratch each iteration, which avoids the
// drift a maintained cost row accumulates: r_j = c_j - sum_i c_B(i) T(i,j).
std::vector<double> reduced_costs(const Tableau& tab,
                                  const std::vector<double>& cost) {
  std::vector<double> rc(cost);
  for (std::size_t i = 0; i < tab.rows; ++i) {
    double cb = cost[tab.basis[i]];
    if (cb == 0.0) continue;
    for (std::size_t j = 0; j < tab.cols; ++j) rc[j] -= cb * tab.t[i][j];
  }
  return rc;
}

// Gaussian elimination with partial pivoting plus one step of iterative
// refinement; returns false on a (numerically) singular system.
bool solve_refined(const std::vector<std::vector<double>>& M,
                   const std::vector<double>& rhs, std::vector<double>& x) {
  const std::size_t d = rhs.size();
  auto eliminate = [d](std::vector<std::vector<double>> m,
                       std::vector<double> r, std::vector<double>& out) {
    for (std::size_t col = 0; col < d; ++col) {
      std::size_t best = col;
      for (std::size_t row = col + 1; row < d; ++row)
        if (std::abs(m[row][col]) > std::abs(m[best][col])) best = row;
      if (std::abs(m[best][col]) < 1e-12) return false;
      std::swap(m[best], m[col]);
      std::swap(r[best], r[col]);
      for (std::size_t row = col + 1; row < d; ++row) {
        double f = m[row][col] / m[col][col];
        if (f == 0.0) continue;
        for (std::size_t j = col; j < d; ++j) m[row][j] -= f * m[col][j];
        r[row] -= f * r[col];
      }
    }
    out.assign(d, 0.0);
    for (std::size_t row = d; row-- > 0;) {
      double acc = r[row];
      for (std::size_t j = row + 1; j < d; ++j) acc -= m[row][j] * out[j];
      out[row] = acc / m[row][row];
    }
    return true;
  };
  if (!eliminate(M, rhs, x)) return false;
  std::vector<double> res(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    double acc = rhs[i];
    for (std::size_t j = 0; j < d; ++j) acc -= M[i][j] * x[j];
    res[i] = acc;
  }
  std::vector<double> dx;
  if (eliminate(M, res, dx))
    for (std::size_t j = 0; j < d; ++j) x[j] += dx[j];
  return true;
}

// One simplex phase under Bland's rule: the smallest-index column with a
// reduced cost below -1e-8 enters; the leaving row takes the smallest
// ratio, ties broken toward the smallest basis index. Candidate pivots at
// or below 1e-10 are never used; a negative-cost column whose entries are
// all nonpositive certifies an unbounded ray, while one whose positive
// entries are merely below tolerance is skipped as numerically stalled
// (the caller re-validates the returned vertex exactly).
PhaseEnd run_phase(Tableau& tab, const std::vector<double>& cost,
                   std::size_t enter_limit) {
  std::size_t limit = 2000 + 50 * (tab.rows + tab.cols) * (tab.rows + 4);
  for (std::size_t iter = 0; iter < limit; ++iter) {
    std::vector<double> rc = reduced_costs(tab, cost);
    std::size_t enter = enter_limit;
    for (std::size_t j = 0; j < enter_limit; ++j) {
      if (rc[j] >= -kDualTol) continue;
      bool any_positive = false, usable = false;
      for (std::size_t i = 0; i < tab.rows; ++i) {
        if (tab.t[i][j] > 0.0) any_positive = true;
        if (tab.t[i][j] > kPivotTol) { usable = true; break; }
      }
      if (usable) { enter = j; break; }
      if (!any_positive) return PhaseEnd::unbounded;
    }
    if (enter == enter_limit) return PhaseEnd::optimal;

    std::size_t leave = tab.rows;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tab.rows; ++i) {
      double a = tab.t[i][enter];
      if (a <= kPivotTol) continue;
      double ratio = std::max(tab.rhs(i), 0.0) / a;
      if (ratio < best - 1e-15 ||
          (ratio <= best + 1e-15 &&
           (leave == tab.rows || tab.basis[i] < tab.basis[leave]))) {
        best = ratio;
        leave = i;
      }
    }
    if (leave == tab.rows) return PhaseEnd::unbounded;
    tab.pivot(leave, enter);
  }
  return PhaseEnd::iteration_limit;
}

}  // namespace

SimplexResult solve_standard_form(const std::vector<std::vector<double>>& E,
                                  const std::vector<double>& b,
                                  const std::vector<double>& c) {
  std::size_t m = E.size();
  if (b.size() != m) throw std::invalid_argument("simplex: b size mismatch");
  std::size_t n = c.size();
  for (const auto& row : E)
    if (row.size() != n) throw std::invalid_argument("simplex: row size");

  // Row equilibration first: each row and its right-hand side are divided
  // by the row's largest magnitude, so phase 1's artificial sum measures
  // infeasibility relative to every row's own scale. Without it one row
  // with a huge (even slack) right-hand side swamps the absolute
  // feasibility threshold with its rounding noise.
  std::vector<double> rscale(m, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    double mx = std::abs(b[i]);
    for (std::size_t j = 0; j < n; ++j) mx = std::max(mx, std::abs(E[i][j]));
    if (mx > 0.0) rscale[i] = 1.0 / mx;
  }

  // Column equilibration: x_j = scale_j * y_j. It keeps the artificial
  // identity block intact while evening out pivot magnitudes for columns
  // spanning many orders of magnitude.
  std::vector<double> scale(n, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    double mx = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      mx = std::max(mx, std::abs(E[i][j]) * rscale[i]);
    if (mx > 0.0) scale[j] = 1.0 / mx;
  }

  Tableau tab;
  tab.rows = m;
  tab.cols = n + m;
  tab.t.assign(m, std::vector<double>(tab.cols + 1, 0.0));
  tab.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double sgn = b[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j)
      tab.t[i][j] = sgn * E[i][j] * rscale[i] * scale[j];
    tab.t[i][n + i] = 1.0;
    tab.t[i][tab.cols] = sgn * b[i] * rscale[i];
    tab.basis[i] = n + i;
  }

  std::vector<double> phase1_cost(tab.cols, 0.0);
  for (std::size_t i = 0; i < m; ++i) phase1_cost[n + i] = 1.0;
  if (run_phase(tab, phase1_cost, tab.cols) == PhaseEnd::iteration_limit)
    throw std::runtime_error("simplex: phase 1 iteration limit");

  double infeas = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basis[i] >= n) infeas += tab.rhs(i);
  if (infeas > 1e-8) return {SimplexStatus::infeasible, 0.0, {}};

  // Drive leftover artificials out on any usable structural entry; a row
  // with none is redundant and keeps its zero-valued artificial parked.
  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basis[i] < n) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(tab.t[i][j]) > kPivotTol) {
        tab.pivot(i, j);
        break;
      }
    }
  }

  std::vector<double> cost(tab.cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) cost[j] = c[j] * scale[j];
  PhaseEnd end = run_phase(tab, cost, n);
  if (end == PhaseEnd::iteration_limit)
    throw std::runtime_error("simplex: phase 2 iteration limit");
  if (end == PhaseEnd::unbounded) return {SimplexStatus::unbounded, 0.0, {}};

  SimplexResult res;
  res.status = SimplexStatus::optimal;
  res.x.assign(n, 0.0);
  // The tableau's rhs column carries the drift of every pivot it survived;
  // the basis itself is trustworthy. Re-solving the basis system against the
  // untouched constraint data lands the vertex within a few ulps, so
  // downstream feasibility checks see it sharp.
  std::vector<std::vector<double>> B(m, std::vector<double>(m, 0.0));
  std::vector<double> tb(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double sgn = b[i] < 0.0 ? -1.0 : 1.0;
    tb[i] = sgn * b[i] * rscale[i];
    for (std::size_t col = 0; col < m; ++col) {
      const std::size_t j = tab.basis[col];
      B[i][col] = j < n ? sgn * E[i][j] * rscale[i] * scale[j]
                        : (i == j - n ? 1.0 : 0.0);
    }
  }
  std::vector<double> y;
  if (solve_refined(B, tb, y)) {
    for (std::size_t i = 0; i < m; ++i)
      if (tab.basis[i] < n)
        res.x[tab.basis[i]] = std::max(y[i], 0.0) * scale[tab.basis[i]];
  } else {
    for (std::size_t i = 0; i < m; ++i)
      if (tab.basis[i] < n)
        res.x[tab.basis[i]] = std::max(tab.rhs(i), 0.0) * scale[tab.basis[i]];
  }
  res.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
  return res;
}

}  // namespace popres
