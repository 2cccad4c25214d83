#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tow/analysis.hpp"
#include "tow/dpp.hpp"

using namespace tow;

TEST_CASE("oscillation basics") {
  GridDomain dom(Shape::interval(-1, 1), 0.05, 0.1);
  GridField c(dom, 3.0);
  CHECK(oscillation(c, pt_zero(), 0.5) == 0.0);

  GridField lin = field_from_function(dom, [](const Point& x) { return 2.0 * x[0]; });
  // nodes strictly inside (-rho, rho); extremes at +-0.5 are excluded
  CHECK(oscillation(lin, pt_zero(), 0.5) == doctest::Approx(2.0 * 0.9).epsilon(1e-12));
  // monotone in the radius
  double prev = 0.0;
  for (double rho : {0.2, 0.4, 0.6, 0.8}) {
    const double o = oscillation(lin, pt_zero(), rho);
    CHECK(o >= prev);
    prev = o;
  }
  CHECK_THROWS_AS(oscillation(c, Point{50.0, 0, 0, 0}, 0.1), std::invalid_argument);
}

TEST_CASE("lipschitz ratio on a linear field") {
  GridDomain dom(Shape::interval(-2, 2), 0.05, 0.1);
  GridField lin = field_from_function(dom, [](const Point& x) { return x[0]; });
  const std::size_t a = dom.index_of(Lattice{-4, 0, 0, 0});
  const std::size_t b = dom.index_of(Lattice{4, 0, 0, 0});
  // osc over B_{6r} with r = 0.25: nodes strictly inside (-1.5, 1.5), so
  // osc = 2 * 1.45 and the ratio is |du| r / (d * osc) = 0.25 / 2.9
  const double got = lipschitz_ratio(lin, a, b, pt_zero(), 0.25);
  CHECK(got == doctest::Approx(0.25 / 2.9).epsilon(1e-12));

  GridField c(dom, 1.0);
  CHECK(lipschitz_ratio(c, a, b, pt_zero(), 0.25) == 0.0);
  CHECK(lipschitz_ratio(lin, a, a, pt_zero(), 0.25) == 0.0);
}

TEST_CASE("harnack constant closed form") {
  CHECK(harnack_constant(HarnackHypotheses{1.0, 1.0, 1.0}) == 16.0);
  // scaling identity: c^{gamma/(gamma+lambda)} recovers 2^{1+lambda} C
  for (double C : {1.0, 2.5, 7.0}) {
    for (double gamma : {0.5, 1.0, 2.0}) {
      for (double lambda : {1.0, 2.0, 3.0}) {
        const HarnackHypotheses h{C, gamma, lambda};
        const double c = harnack_constant(h);
        CHECK(std::pow(c, gamma / (gamma + lambda)) ==
              doctest::Approx(std::pow(2.0, 1.0 + lambda) * C).epsilon(1e-10));
      }
    }
  }
  // monotone in each parameter
  CHECK(harnack_constant({2.0, 1.0, 1.0}) > harnack_constant({1.0, 1.0, 1.0}));
  CHECK(harnack_constant({1.0, 1.0, 2.0}) > harnack_constant({1.0, 1.0, 1.0}));
  CHECK(harnack_constant({2.0, 0.5, 1.0}) > harnack_constant({2.0, 1.0, 1.0}));
  CHECK_THROWS_AS(harnack_constant({0.5, 1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(harnack_constant({1.0, 0.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(harnack_constant({1.0, 1.0, -1.0}), std::invalid_argument);
}

TEST_CASE("harnack lemma check on the constant function") {
  GridDomain dom(Shape::interval(-5, 5), 0.05, 0.1);
  GridField one(dom, 1.0);
  const HarnackCheckResult res = harnack_lemma_check(one, {1.0, 1.0, 1.0});
  CHECK(res.verdict == Verdict::Pass);
  CHECK(res.hypotheses_hold);
  CHECK(res.sup_b1 == 1.0);
  CHECK(res.bound == 16.0);
  CHECK(res.witnesses.empty());
}

TEST_CASE("harnack lemma check flags a spike") {
  GridDomain dom(Shape::interval(-5, 5), 0.05, 0.1);
  // huge away from the origin, 1 near it: the oscillation hypothesis must
  // fail at some sampled (x, r, R)
  GridField u = field_from_function(dom, [](const Point& x) {
    return std::abs(x[0]) > 0.1 ? 1e6 : 1.0;
  });
  const HarnackCheckResult res = harnack_lemma_check(u, {1.0, 1.0, 1.0});
  CHECK(res.verdict == Verdict::Fail);
  CHECK(!res.hypotheses_hold);
  CHECK(!res.witnesses.empty());
}

TEST_CASE("fitted hypotheses make the lemma pass") {
  GridDomain dom(Shape::interval(-5, 5), 0.05, 0.1);
  const GameParams g = make_params(4.0, 1, 0.1);
  GridField bd = field_from_function(dom, [](const Point& x) {
    return std::exp(-x[0] * x[0]);
  });
  SolveReport rep = solve_dpp(dom, bd, g);
  REQUIRE(rep.converged);
  // normalize to u(0) = 1
  GridField u = rep.solution;
  const double at0 = u.values[dom.index_of(lat_zero())];
  for (double& v : u.values) v /= at0;
  const HarnackHypotheses fit = fit_harnack_hypotheses(u, 1.0, 1.0);
  CHECK(fit.C >= 1.0);
  const HarnackCheckResult res = harnack_lemma_check(u, fit);
  CHECK(res.verdict == Verdict::Pass);
  CHECK(res.sup_b1 <= res.bound);
}

TEST_CASE("fundamental solution normalization and branches") {
  for (double p : {3.0, 4.0, 8.0}) {
    for (int n : {1, 2, 3}) {
      Point z = pt_zero();
      z[0] = 0.7;
      const FundamentalSolutionSpec spec(p, n, z);
      CHECK(fundamental_solution_radial(spec, 0.7) == doctest::Approx(2.0).epsilon(1e-12));
      CHECK(fundamental_solution_radial(spec, 3.0) == doctest::Approx(0.0).epsilon(1e-12));
      if (n >= 2) {
        Point x = z;
        x[1] += 0.7;  // |x - z| = 0.7 off axis too
        CHECK(fundamental_solution(spec, x) == doctest::Approx(2.0).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("fundamental solution log branch and continuity at p = n") {
  Point z = pt_zero();
  z[0] = 0.5;
  const FundamentalSolutionSpec logspec(2.0, 2, z);
  CHECK(fundamental_solution_radial(logspec, 1.0) ==
        doctest::Approx(2.0 * std::log(3.0) / std::log(6.0)).epsilon(1e-12));
  // power branch converges to the log branch as p -> n
  for (double rho : {0.2, 0.8, 1.7}) {
    const double at = fundamental_solution_radial(logspec, rho);
    const double lo = fundamental_solution_radial(FundamentalSolutionSpec(2.0 - 1e-3, 2, z), rho);
    const double hi = fundamental_solution_radial(FundamentalSolutionSpec(2.0 + 1e-3, 2, z), rho);
    CHECK(std::abs(lo - at) < 1e-2 * (1.0 + std::abs(at)));
    CHECK(std::abs(hi - at) < 1e-2 * (1.0 + std::abs(at)));
  }
}

TEST_CASE("fundamental solution solves the radial equation") {
  // (p - 1) v'' + (n - 1) v' / rho = 0 for the p != n branch
  Point z = pt_zero();
  z[0] = 1.0;
  for (double p : {3.0, 5.0}) {
    for (int n : {2, 3}) {
      const FundamentalSolutionSpec spec(p, n, z);
      const double dr = 1e-4;
      for (double rho : {0.5, 1.0, 2.0}) {
        const double vm = fundamental_solution_radial(spec, rho - dr);
        const double v0 = fundamental_solution_radial(spec, rho);
        const double vp = fundamental_solution_radial(spec, rho + dr);
        const double d1 = (vp - vm) / (2.0 * dr);
        const double d2 = (vp - 2.0 * v0 + vm) / (dr * dr);
        const double resid = (p - 1.0) * d2 + (n - 1.0) * d1 / rho;
        const double scale = std::abs((p - 1.0) * d2) + std::abs(d1 / rho) + 1.0;
        CHECK(std::abs(resid) / scale < 1e-4);
      }
    }
  }
}

TEST_CASE("fundamental solution spec validation") {
  Point z = pt_zero();
  CHECK_THROWS_AS(FundamentalSolutionSpec(4.0, 2, z), std::invalid_argument);  // z = 0
  z[0] = 3.5;
  CHECK_THROWS_AS(FundamentalSolutionSpec(4.0, 2, z), std::invalid_argument);  // |z| >= 3
  z[0] = 0.5;
  CHECK_THROWS_AS(FundamentalSolutionSpec(1.0, 2, z), std::invalid_argument);  // p <= 1
}

TEST_CASE("harmonic barrier endpoints and drift") {
  Point z = pt_zero();
  z[0] = 0.3;
  for (int n : {1, 2, 3}) {
    const GameParams g = make_params(4.0, n, 0.05);
    Point inner = z, outer = z;
    inner[0] += 0.5;
    outer[0] += 2.0;
    CHECK(harmonic_barrier(n, z, 0.5, 2.0, inner) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(harmonic_barrier(n, z, 0.5, 2.0, outer) == doctest::Approx(0.0).epsilon(1e-12));
    // supermartingale property of the one-step operator for the maximal pull
    for (double rho : {0.3, 0.6, 1.0, 1.5, 2.2}) {
      Point x = z;
      x[0] += rho;
      CHECK(barrier_one_step_drift(n, z, 0.5, 2.0, x, g) >= -1e-8);
    }
  }
}

TEST_CASE("barrier shape: radial monotone, convex along rays") {
  Point z = pt_zero();
  z[0] = -0.2;
  for (int n : {1, 2, 3}) {
    const BarrierShapeCheck c = barrier_shape_check(n, z, 0.5, 2.0);
    CHECK(c.ok);
    CHECK(c.min_second_difference >= -1e-8);
    CHECK(c.max_radial_increment <= 1e-8);
  }
}

TEST_CASE("harnack quotient") {
  GridDomain dom(Shape::interval(-2, 2), 0.05, 0.1);
  GridField c(dom, 2.5);
  CHECK(harnack_quotient(c, pt_zero(), 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  GridField pos = field_from_function(dom, [](const Point& x) { return 2.0 + x[0]; });
  // max / min over nodes strictly inside (-1, 1)
  CHECK(harnack_quotient(pos, pt_zero(), 1.0) ==
        doctest::Approx(2.95 / 1.05).epsilon(1e-12));
  GridField neg = field_from_function(dom, [](const Point& x) { return x[0]; });
  CHECK_THROWS_AS(harnack_quotient(neg, pt_zero(), 1.0), std::invalid_argument);
}

TEST_CASE("growth bound check on a solved positive field") {
  GridDomain dom(Shape::ball(1, pt_zero(), 5.0), 0.1, 0.2);
  const GameParams g = make_params(4.0, 1, 0.2);
  GridField bd = field_from_function(dom, [](const Point& x) {
    return std::exp(-x[0] * x[0] / 4.0);
  });
  SolveReport rep = solve_dpp(dom, bd, g);
  REQUIRE(rep.converged);
  GridField u = rep.solution;
  const double at0 = u.values[dom.index_of(lat_zero())];
  for (double& v : u.values) v /= at0;
  const GrowthCheckResult res = growth_bound_check(u, g, pt_zero(), 0.5, 3000, 7);
  CHECK(res.verdict == Verdict::Pass);
  CHECK(res.inf_over_ball > 0.0);
  CHECK(res.fitted_growth_constant == doctest::Approx(res.inf_over_ball * 0.5).epsilon(1e-12));
  CHECK(res.min_barrier_drift >= -1e-8);
  CHECK(res.optional_stopping_ok);
}

TEST_CASE("neighbor comparability of a positive solved field") {
  GridDomain dom(Shape::interval(-2, 2), 0.05, 0.1);
  const GameParams g = make_params(4.0, 1, 0.1);
  GridField bd = field_from_function(dom, [](const Point& x) {
    return 1.0 + 0.5 * std::sin(3.0 * x[0]);
  });
  SolveReport rep = solve_dpp(dom, bd, g);
  REQUIRE(rep.converged);

  SUBCASE("scan only") {
    const NeighborComparabilityResult res =
        neighbor_comparability_check(rep.solution, g, 0, 1);
    CHECK(res.verdict == Verdict::Pass);
    CHECK(res.pairs_checked > 0);
    CHECK(res.pairs_failed == 0);
    CHECK(res.threshold == doctest::Approx(std::pow(g.alpha / 2.0, 20.0)).epsilon(1e-12));
    CHECK(res.min_ratio >= res.threshold);
  }

  SUBCASE("with the half-step simulation") {
    const NeighborComparabilityResult res =
        neighbor_comparability_check(rep.solution, g, 4000, 3);
    CHECK(res.verdict == Verdict::Pass);
    CHECK(res.hit_probability.mean >= res.threshold);
  }
}

TEST_CASE("point reaching for p > n") {
  const GameParams g = make_params(5.0, 1, 0.1);
  Point x0 = pt_zero();
  SUBCASE("start at the target") {
    const ProbEstimate e = point_reach_probability(x0, g, 200, 5);
    CHECK(e.mean == 1.0);
  }
  SUBCASE("positive from a quarter out") {
    x0[0] = 0.25;
    const ProbEstimate e = point_reach_probability(x0, g, 4000, 5);
    CHECK(e.mean > 0.0);
    CHECK(e.mean < 1.0);
  }
  SUBCASE("requires p > n") {
    const GameParams bad = make_params(3.0, 3, 0.1);
    CHECK_THROWS_AS(point_reach_probability(x0, bad, 100, 1), std::invalid_argument);
  }
  SUBCASE("start must be well inside") {
    x0[0] = 0.75;
    CHECK_THROWS_AS(point_reach_probability(x0, g, 100, 1), std::invalid_argument);
  }
}
