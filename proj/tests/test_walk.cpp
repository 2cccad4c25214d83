#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tow/walk.hpp"

using namespace tow;

namespace {

// closed-form gambler's ruin: a steps to the left barrier, b to the right
int steps_left(double t0, double eps) { return int(std::ceil(t0 / eps - 1e-9)); }
int steps_right(double t0, double eps) { return int(std::ceil((1.0 - t0) / eps - 1e-9)); }

}  // namespace

TEST_CASE("line walk equals the closed-form ruin probabilities") {
  for (double eps : {0.2, 0.1, 0.05, 0.02}) {
    for (double t0 = 0.05; t0 < 1.0; t0 += 0.05) {
      const LineWalkSpec spec(t0, eps);
      const LineWalkResult res = line_walk_exact(spec);
      const double a = steps_left(t0, eps), b = steps_right(t0, eps);
      CHECK(res.p_left == doctest::Approx(b / (a + b)).epsilon(1e-10));
      CHECK(res.expected_stop == doctest::Approx(a * b).epsilon(1e-9));
    }
  }
}

TEST_CASE("line walk symmetric start") {
  const LineWalkResult res = line_walk_exact(LineWalkSpec(0.5, 0.1));
  CHECK(res.p_left == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(res.expected_stop == doctest::Approx(25.0).epsilon(1e-10));
}

TEST_CASE("line walk absorption bounds over the sweep") {
  for (double eps : {0.2, 0.1, 0.05}) {
    for (double t0 = 0.1; t0 <= 0.901; t0 += 0.1) {
      const LineWalkResult res = line_walk_exact(LineWalkSpec(t0, eps));
      CHECK(res.p_left >= 1.0 - (t0 + eps));
      CHECK(res.expected_stop <= (t0 + 4.0 * eps) / (eps * eps));
    }
  }
}

TEST_CASE("line walk absorption is monotone in the start height") {
  for (double eps : {0.1, 0.05}) {
    double prev = 2.0;
    for (double t0 = 0.05; t0 < 1.0; t0 += 0.05) {
      const double p = line_walk_exact(LineWalkSpec(t0, eps)).p_left;
      CHECK(p <= prev + 1e-12);
      prev = p;
    }
  }
}

TEST_CASE("line walk spec validation") {
  CHECK_THROWS_AS(LineWalkSpec(0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(LineWalkSpec(1.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(LineWalkSpec(0.5, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(LineWalkSpec(0.5, 0.0), std::invalid_argument);
}

TEST_CASE("running-maximum tail: impossible threshold") {
  const HoeffdingCheck c = hoeffding_bound_check(1, 0.1, 10, 1.5, 2000, 3);
  CHECK(c.empirical.mean == 0.0);
  CHECK(c.bound > 0.0);
  CHECK(c.within_bound);
}

TEST_CASE("running-maximum tail: single step closed form") {
  // one uniform(-b, b) step: P(|Y| >= lambda) = 1 - lambda / b
  const double b = 0.2, lambda = 0.15;
  const HoeffdingCheck c = hoeffding_bound_check(1, b, 1, lambda, 40000, 5);
  const double exact = 1.0 - lambda / b;
  CHECK(std::abs(c.empirical.mean - exact) <= 3.0 * c.empirical.std_error + 1e-9);
}

TEST_CASE("running-maximum tail stays under the exponential bound") {
  const HoeffdingCheck c = hoeffding_bound_check(2, 0.05, 100, 1.0, 20000, 7);
  CHECK(c.within_bound);
  CHECK(c.bound == doctest::Approx(8.0 * std::exp(-1.0 / (2.0 * 100.0 * 0.0025))));
}

TEST_CASE("cylinder walk: immediate exits") {
  const GameParams g = make_params(4.0, 1, 0.05);
  Rng r(1);
  CylinderSample bottom = cylinder_walk_sample(CylinderSpec(0.5, 0.0, 0.05, 1), g, r);
  CHECK(bottom.outcome == CylinderOutcome::Bottom);
  CHECK(bottom.steps == 0);
  CylinderSample top = cylinder_walk_sample(CylinderSpec(0.5, 1.0, 0.05, 1), g, r);
  CHECK(top.outcome == CylinderOutcome::Top);
  CHECK(top.steps == 0);
}

TEST_CASE("cylinder spec validation") {
  CHECK_THROWS_AS(CylinderSpec(0.0, 0.1, 0.05, 1), std::invalid_argument);
  CHECK_THROWS_AS(CylinderSpec(0.5, -0.1, 0.05, 1), std::invalid_argument);
  CHECK_THROWS_AS(CylinderSpec(0.5, 1.2, 0.05, 1), std::invalid_argument);
  CHECK_THROWS_AS(CylinderSpec(0.5, 0.1, 0.6, 1), std::invalid_argument);
  CHECK_THROWS_AS(CylinderSpec(0.5, 0.1, 0.05, 0), std::invalid_argument);
}

TEST_CASE("cylinder estimates are reproducible and sum to one") {
  const GameParams g = make_params(4.0, 1, 0.02);
  const CylinderSpec spec(0.5, 0.1, 0.02, 1);
  const CylinderEstimate a = estimate_cylinder(spec, g, 4000, 11);
  const CylinderEstimate b = estimate_cylinder(spec, g, 4000, 11, false, 3);
  CHECK(a.counts[0] == b.counts[0]);
  CHECK(a.counts[1] == b.counts[1]);
  CHECK(a.counts[2] == b.counts[2]);
  CHECK(a.p_bottom.mean == b.p_bottom.mean);
  CHECK(a.counts[0] + a.counts[1] + a.counts[2] == 4000);
  CHECK(a.p_bottom.mean + a.p_top.mean + a.p_side.mean == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cylinder bottom probability decreases with start height") {
  const GameParams g = make_params(4.0, 1, 0.02);
  double prev = 1.1, prev_se = 0.0;
  for (double t : {0.05, 0.15, 0.3, 0.6}) {
    const CylinderEstimate e = estimate_cylinder(CylinderSpec(0.5, t, 0.02, 1), g, 8000, 13);
    CHECK(e.p_bottom.mean <= prev + 3.0 * (e.p_bottom.std_error + prev_se));
    prev = e.p_bottom.mean;
    prev_se = e.p_bottom.std_error;
  }
}

TEST_CASE("decomposed sampler agrees with the direct walk in distribution") {
  const GameParams g = make_params(4.0, 1, 0.02);
  const CylinderSpec spec(0.5, 0.1, 0.02, 1);
  const CylinderEstimate direct = estimate_cylinder(spec, g, 20000, 17, false);
  const CylinderEstimate decomp = estimate_cylinder(spec, g, 20000, 18, true);
  const std::vector<long> a{direct.counts[0], direct.counts[1], direct.counts[2]};
  const std::vector<long> b{decomp.counts[0], decomp.counts[1], decomp.counts[2]};
  CHECK(chi_square_two_sample_pvalue(a, b) > 0.0027);
}

TEST_CASE("near-degenerate horizontal motion approaches the pure line walk") {
  // large p makes alpha ~ 1; the vertical marginal then dominates
  const GameParams g = make_params(400.0, 1, 0.05);
  const CylinderSpec spec(0.5, 0.25, 0.05, 1);
  const CylinderEstimate e = estimate_cylinder(spec, g, 20000, 19);
  // vertical line walk on (0, 1) started at 0.25
  const LineWalkResult lw = line_walk_exact(LineWalkSpec(0.25, 0.05));
  CHECK(std::abs(e.p_bottom.mean - lw.p_left) <= 3.0 * e.p_bottom.std_error + 0.02);
}
