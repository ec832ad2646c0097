#pragma once

#include <vector>

namespace dmc {

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  int pivots = 0;
  bool feasible = true;
};

// minimize c.x  subject to  rows[i].x >= b[i],  0 <= x[j] <= ub[j]
//
// Dense two-phase bounded-variable primal simplex with Bland's rule, so it
// cannot cycle. b must be nonnegative. ub entries may be +infinity.
// Throws SolverStall when max_pivots is exhausted. feasible=false when the
// constraint system has no point inside the bounds.
SimplexResult solve_bounded_lp(const std::vector<std::vector<double>>& rows,
                               const std::vector<double>& b, const std::vector<double>& c,
                               const std::vector<double>& ub, int max_pivots);

}  // namespace dmc
