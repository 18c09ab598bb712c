#pragma once

#include <vector>

namespace popres {

enum class SimplexStatus { optimal, infeasible, unbounded };

struct SimplexResult {
  SimplexStatus status = SimplexStatus::infeasible;
  double objective = 0.0;
  std::vector<double> x;
};

// Dense two-phase primal simplex with Bland's rule for
//     min c.x   subject to   E x = b,  x >= 0.
// Rows with negative b are flipped; phase 1 drives artificials out, phase 2
// optimizes. Bland's rule (smallest eligible index for both the entering
// and the leaving choice) guarantees termination under degeneracy, which
// the min-infnorm formulation produces in quantity. Pivots smaller than
// 1e-10 are refused; final reduced costs are recomputed and must clear
// -1e-8 for the result to count as optimal.
SimplexResult solve_standard_form(const std::vector<std::vector<double>>& E,
                                  const std::vector<double>& b,
                                  const std::vector<double>& c);

}  // namespace popres
