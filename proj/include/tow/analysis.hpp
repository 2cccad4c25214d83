#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tow/engine.hpp"
#include "tow/grid.hpp"
#include "tow/params.hpp"
#include "tow/stats.hpp"

namespace tow {

// --- Oscillation / Lipschitz ---------------------------------------------

// max - min of u over grid nodes at distance < rho from center.
// Throws if the ball contains no node.
double oscillation(const GridField& u, const Point& center, double rho);

// |u(x) - u(y)| * r / (|x - y| * osc(u, B_6r(z0))); 0 when the oscillation
// vanishes. This is the quantity bounded by the Lipschitz constant.
double lipschitz_ratio(const GridField& u, std::size_t x, std::size_t y, const Point& z0,
                       double r);

// --- Abstract Harnack lemma ----------------------------------------------

struct HarnackHypotheses {
  double C = 1.0;      // shared constant, >= 1
  double gamma = 1.0;  // oscillation exponent, > 0
  double lambda = 1.0; // growth exponent, > 0
};

// The closed-form constant (2^{1+lambda} C)^{1 + lambda/gamma}.
double harnack_constant(const HarnackHypotheses& h);

struct HarnackWitness {
  Point x = pt_zero();
  double r = 0.0;
  double R = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string condition;  // "oscillation" or "growth"
};

enum class Verdict { Pass, Fail, Inconclusive };

struct HarnackCheckResult {
  Verdict verdict = Verdict::Inconclusive;
  bool hypotheses_hold = false;
  double sup_b1 = 0.0;
  double bound = 0.0;
  std::vector<HarnackWitness> witnesses;
};

// Verifies the oscillation and growth hypotheses on a dyadic (x, r, R)
// lattice for a positive field normalized to u(0) = 1 on (a grid covering)
// B_5(0), then checks sup_{B_1} u against harnack_constant(h). Radii under
// twice the grid spacing are skipped; if nothing remains the verdict is
// Inconclusive.
HarnackCheckResult harnack_lemma_check(const GridField& u, const HarnackHypotheses& h);

// Smallest C >= 1 for which both hypotheses hold on the sampled lattice at
// the given exponents.
HarnackHypotheses fit_harnack_hypotheses(const GridField& u, double gamma, double lambda);

// --- Fundamental solution -------------------------------------------------

// Radial p-harmonic comparison function, normalized to 2 on the sphere
// |x - z| = |z| and 0 on |x - z| = 3:
//   p != n: 2 (rho^{-kappa} - 3^{-kappa}) / (|z|^{-kappa} - 3^{-kappa}),
//           kappa = (n - p)/(p - 1)
//   p == n: 2 log(3/rho) / log(3/|z|)
struct FundamentalSolutionSpec {
  double p = 4.0;
  int n = 2;
  Point z = pt_zero();
  double kappa = 0.0;

  FundamentalSolutionSpec(double p_, int n_, const Point& z_);
};

double fundamental_solution(const FundamentalSolutionSpec& spec, const Point& x);
double fundamental_solution_radial(const FundamentalSolutionSpec& spec, double rho);

// --- Growth bound (pull strategy + harmonic barrier) ----------------------

// Harmonic barrier on the annulus B_outer(z) \ B_inner(z): 1 on the inner
// sphere, 0 on the outer, extended by the same formula beyond.
double harmonic_barrier(int n, const Point& z, double inner, double outer, const Point& x);

struct GrowthCheckResult {
  Verdict verdict = Verdict::Inconclusive;
  double inf_over_ball = 0.0;
  double fitted_growth_constant = 0.0;  // inf * r^n
  ProbEstimate inner_hit;               // pull-strategy inner-boundary hit probability
  double barrier_at_start = 0.0;
  double min_barrier_drift = 0.0;       // along simulated trajectories
  bool optional_stopping_ok = false;    // v(x0) <= 2^{n+1} P + 3 sigma
};

// Checks inf_{B_r(z)} u <= C r^{-n} structure for a normalized positive
// field and estimates the inner-hit probability of the pull strategy on
// B_4(z) \ B_r(z) scaled into the domain.
GrowthCheckResult growth_bound_check(const GridField& u, const GameParams& params, const Point& z,
                                     double r, long trials, std::uint64_t seed);

// (max / min) of u over nodes in B_radius(center). Throws on non-positive
// values.
double harnack_quotient(const GridField& u, const Point& center, double radius);

// --- Neighbor comparability (Lemma on eps/2 steps) ------------------------

struct NeighborComparabilityResult {
  Verdict verdict = Verdict::Inconclusive;
  long pairs_checked = 0;
  long pairs_failed = 0;
  double min_ratio = 0.0;   // min u(x)/u(y) over sampled pairs
  double threshold = 0.0;   // (alpha/2)^20
  ProbEstimate hit_probability;  // half-step strategy reach probability
};

// Exhaustive scan of node pairs with |x - y| <= 10 eps checking
// u(x) >= (alpha/2)^20 u(y), plus a Monte Carlo lower bound on the half-step
// strategy's hit probability (trials = 0 skips the simulation).
NeighborComparabilityResult neighbor_comparability_check(const GridField& u,
                                                         const GameParams& params, long trials,
                                                         std::uint64_t seed,
                                                         long max_pairs = 20000);

// --- Point reaching for p > n ---------------------------------------------

// Probability that the pull strategy towards the origin reaches the origin
// node before exiting B_1(0), against a fleeing opponent. Requires p > n and
// |x0| < 1/2.
ProbEstimate point_reach_probability(const Point& x0, const GameParams& params, long trials,
                                     std::uint64_t seed, int threads = 0);

// --- Barrier calculus checks ----------------------------------------------

// One-step drift of the barrier along the ray through z, with the exact ball
// mean-value property for the harmonic barrier:
//   beta v(x) + (alpha/2)(v(rho - eps) + v(rho + eps)) - v(x).
double barrier_one_step_drift(int n, const Point& z, double inner, double outer, const Point& x,
                              const GameParams& params);

// Finite-difference convexity and monotonicity of rho -> v(rho) on a radial
// sweep of [inner/2, 2 outer]. Returns the most negative second difference
// (convexity) and the most positive increment (monotonicity); both should be
// >= -tol resp. <= tol. Only the radial profile matters: the one-step drift
// inequality compares v at rho - eps, rho and rho + eps along the same ray.
struct BarrierShapeCheck {
  double min_second_difference = 0.0;
  double max_radial_increment = 0.0;
  bool ok = false;
};

BarrierShapeCheck barrier_shape_check(int n, const Point& z, double inner, double outer,
                                      double tol = 1e-8);

}  // namespace tow
