#pragma once

#include <vector>

namespace cvrp {

// Fractional covering LP:  min c^T x  s.t.  sum_{columns covering row} x >= 1,  x >= 0.
struct CoveringLp {
    int rows = 0;
    std::vector<std::vector<int>> columns;  // row indices covered by each column
    std::vector<double> costs;
};

struct LpResult {
    std::vector<double> x;
    double objective = 0.0;
    std::vector<double> duals;  // one per row
    int iterations = 0;
};

// Two-phase dense primal simplex with Bland's rule (no cycling) and a
// 1e-9 pivot tolerance. Duals come from the final basis. Throws
// std::runtime_error if the iteration guard trips or phase 1 cannot
// reach feasibility.
LpResult solve_covering_lp(const CoveringLp& lp);

}  // namespace cvrp
