#pragma once

#include "tow/grid.hpp"
#include "tow/params.hpp"

namespace tow {

struct SolveReport {
  long iterations = 0;
  double final_residual = 0.0;
  double tolerance = 0.0;
  bool converged = false;
  GridField solution;
};

// One application of the dynamic programming operator: at every interior node
//   T(u)(x) = (alpha/2) * (min_B u + max_B u) + beta * mean_B u
// with B = ball_nodes(x, eps); boundary-strip values pass through unchanged.
// All nodes are updated from the previous iterate (Jacobi sweep), so the
// result is independent of node order and safe to compute in parallel.
GridField dpp_apply(const GridField& u, const GameParams& params, int threads = 0);

// Sup-norm of T(u) - u over interior nodes.
double dpp_residual(const GridField& u, const GameParams& params, int threads = 0);

// Picard iteration u <- T(u) from the boundary-mean initial guess until the
// sup-norm residual drops to `tolerance`. On non-convergence the report
// carries converged = false and the last residual.
SolveReport solve_dpp(const GridDomain& domain, const GridField& boundary,
                      const GameParams& params, double tolerance = 1e-10,
                      long max_iters = 1000000, int threads = 0);

// Same iteration from an explicit initial interior guess (boundary values are
// still taken from `boundary`). Used by the uniqueness check.
SolveReport solve_dpp_from(const GridDomain& domain, const GridField& boundary,
                           const GridField& initial, const GameParams& params,
                           double tolerance = 1e-10, long max_iters = 1000000,
                           int threads = 0);

}  // namespace tow
