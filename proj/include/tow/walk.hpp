#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tow/params.hpp"
#include "tow/rng.hpp"
#include "tow/stats.hpp"

namespace tow {

// Symmetric +-eps walk on (0, 1), stopped on leaving the interval.
struct LineWalkSpec {
  double t0 = 0.5;  // start, in (0, 1)
  double eps = 0.1; // step, < 1/4

  LineWalkSpec(double t0_, double eps_);
};

struct LineWalkResult {
  double p_left = 0.0;        // absorption probability at <= 0
  double expected_stop = 0.0; // expected number of steps
};

// Exact absorption probability and expected stopping time, from the
// gambler's-ruin recurrences on the lattice t0 + j*eps (tridiagonal solve).
LineWalkResult line_walk_exact(const LineWalkSpec& spec);

struct HoeffdingCheck {
  ProbEstimate empirical;  // P(max_m |Y_1+...+Y_m| >= lambda)
  double bound = 0.0;      // 4 n exp(-lambda^2 / (2 N b^2))
  bool within_bound = false;  // empirical <= bound + 3 sigma
};

// Running-maximum tail of a sum of i.i.d. uniform-in-ball steps against the
// Hoeffding / Levy-Kolmogorov bound.
HoeffdingCheck hoeffding_bound_check(int n, double b, long N, double lambda, long trials,
                                     std::uint64_t seed);

// (n+1)-dimensional cylinder walk: vertical +-eps coin steps with probability
// alpha/2 each, horizontal uniform-in-ball step with probability beta. Runs
// until the vertical component leaves (0, 2r) or the horizontal leaves B_2r.
struct CylinderSpec {
  double r = 0.5;
  double t = 0.1;   // start height in [0, 2r]
  double eps = 0.01;
  int n = 1;        // horizontal dimension

  CylinderSpec(double r_, double t_, double eps_, int n_);
};

enum class CylinderOutcome { Bottom, Top, Side };

struct CylinderSample {
  CylinderOutcome outcome = CylinderOutcome::Bottom;
  long steps = 0;
  bool capped = false;
};

CylinderSample cylinder_walk_sample(const CylinderSpec& spec, const GameParams& params, Rng& rng,
                                    long step_cap = 100000000);

// Same walk sampled through the three independent components: the vertical
// line walk t~, the horizontal walk x~, and the Bernoulli counter
// U_j = sum Z_m with P(Z = 1) = alpha, identified via t_j = t~_{U_j},
// x_j = x~_{j - U_j}.
CylinderSample decomposed_walk_sample(const CylinderSpec& spec, const GameParams& params,
                                      Rng& vertical_rng, Rng& horizontal_rng, Rng& coin_rng,
                                      long step_cap = 100000000);

struct CylinderEstimate {
  ProbEstimate p_bottom;
  ProbEstimate p_top;
  ProbEstimate p_side;
  long counts[3] = {0, 0, 0};
};

CylinderEstimate estimate_cylinder(const CylinderSpec& spec, const GameParams& params, long trials,
                                   std::uint64_t seed, bool decomposed = false, int threads = 0);

}  // namespace tow
