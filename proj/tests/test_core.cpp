#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "tow/grid.hpp"
#include "tow/history.hpp"
#include "tow/params.hpp"
#include "tow/rng.hpp"
#include "tow/stats.hpp"

using namespace tow;

TEST_CASE("game parameters") {
  const GameParams g = make_params(4.0, 2, 0.1);
  CHECK(g.alpha == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(g.beta == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  for (double p : {2.5, 3.0, 5.0, 8.0, 50.0}) {
    for (int n : {1, 2, 3, 4}) {
      const GameParams q = make_params(p, n, 0.2);
      CHECK(q.alpha + q.beta == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(q.alpha > 0.0);
      CHECK(q.beta > 0.0);
      CHECK(q.alpha == doctest::Approx((p - 2.0) / (n + p)).epsilon(1e-15));
      CHECK(q.beta == doctest::Approx((n + 2.0) / (n + p)).epsilon(1e-15));
    }
  }
  CHECK_THROWS_AS(make_params(2.0, 1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_params(1.5, 1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_params(4.0, 0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_params(4.0, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_params(4.0, 1, -0.1), std::invalid_argument);
}

TEST_CASE("lattice helpers") {
  Lattice a{1, -2, 3, 0}, b{4, 5, -6, 0};
  CHECK(lat_add(a, b) == Lattice{5, 3, -3, 0});
  CHECK(lat_sub(a, b) == Lattice{-3, -7, 9, 0});
  CHECK(lat_neg(a) == Lattice{-1, 2, -3, 0});
  CHECK(lat_norm2(a, 3) == doctest::Approx(14.0));
  CHECK(lat_is_zero(lat_zero()));
  CHECK(!lat_is_zero(a));
  CHECK(lat_lex_less(Lattice{0, 1, 0, 0}, Lattice{1, 0, 0, 0}));
  CHECK(lat_lex_less(Lattice{1, -1, 0, 0}, Lattice{1, 0, 0, 0}));
  CHECK(!lat_lex_less(a, a));
}

TEST_CASE("shape membership and boundary distance") {
  const Shape iv = Shape::interval(0.0, 1.0);
  CHECK(iv.contains(Point{0.5, 0, 0, 0}));
  CHECK(!iv.contains(Point{0.0, 0, 0, 0}));
  CHECK(iv.boundary_distance(Point{0.3, 0, 0, 0}) == doctest::Approx(0.3));
  CHECK(iv.boundary_distance(Point{-0.2, 0, 0, 0}) == doctest::Approx(0.2));

  const Shape bx = Shape::box(2, Point{0, 0, 0, 0}, Point{2, 1, 0, 0});
  CHECK(bx.contains(Point{1.0, 0.5, 0, 0}));
  CHECK(!bx.contains(Point{1.0, 1.0, 0, 0}));
  CHECK(bx.boundary_distance(Point{1.0, 0.4, 0, 0}) == doctest::Approx(0.4));
  CHECK(bx.boundary_distance(Point{3.0, 2.0, 0, 0}) == doctest::Approx(std::sqrt(2.0)));

  const Shape bl = Shape::ball(2, Point{1, 1, 0, 0}, 2.0);
  CHECK(bl.contains(Point{1, 1, 0, 0}));
  CHECK(!bl.contains(Point{3.0, 1.0, 0, 0}));
  CHECK(bl.boundary_distance(Point{1.0, 2.0, 0, 0}) == doctest::Approx(1.0));
  CHECK(bl.boundary_distance(Point{4.0, 1.0, 0, 0}) == doctest::Approx(1.0));

  const Shape an = Shape::annulus(2, pt_zero(), 1.0, 3.0);
  CHECK(an.contains(Point{2.0, 0, 0, 0}));
  CHECK(!an.contains(Point{0.5, 0, 0, 0}));
  CHECK(an.boundary_distance(Point{1.5, 0, 0, 0}) == doctest::Approx(0.5));
  CHECK(an.boundary_distance(Point{0.2, 0, 0, 0}) == doctest::Approx(0.8));

  CHECK_THROWS_AS(Shape::interval(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Shape::ball(2, pt_zero(), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(Shape::annulus(2, pt_zero(), 2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Shape::box(5, pt_zero(), pt_zero()), std::invalid_argument);
}

TEST_CASE("1-D interval grid: node census by hand") {
  // interval (0,1), h = 0.05, eps = 0.1: interior lattice 1..19, strip -2..0
  // and 20..22
  GridDomain dom(Shape::interval(0, 1), 0.05, 0.1);
  CHECK(dom.node_count() == 25);
  CHECK(dom.interior_count() == 19);
  for (int k = -2; k <= 22; ++k) {
    const auto idx = dom.find(Lattice{k, 0, 0, 0});
    REQUIRE(idx.has_value());
    CHECK(dom.is_interior(*idx) == (k >= 1 && k <= 19));
  }
  CHECK(!dom.find(Lattice{-3, 0, 0, 0}).has_value());
  CHECK(!dom.find(Lattice{23, 0, 0, 0}).has_value());
  // strict open ball: offsets +-2 sit exactly at eps and are excluded
  CHECK(dom.ball_offsets().size() == 3);
}

TEST_CASE("grid spacing contract") {
  CHECK_THROWS_AS(GridDomain(Shape::interval(0, 1), 0.06, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(GridDomain(Shape::interval(0, 1), 0.0, 0.1), std::invalid_argument);
  CHECK_NOTHROW(GridDomain(Shape::interval(0, 1), 0.05, 0.1));
}

TEST_CASE("2-D ball offsets: nine-node stencil by hand") {
  // h = 0.1, eps = 0.2: lattice offsets with i^2 + j^2 < 4
  GridDomain dom(Shape::ball(2, pt_zero(), 1.0), 0.1, 0.2);
  const auto& offs = dom.ball_offsets();
  REQUIRE(offs.size() == 9);
  std::set<std::pair<int, int>> got;
  for (const auto& o : offs) got.insert({o[0], o[1]});
  const std::set<std::pair<int, int>> want = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 0},
                                             {0, 1},   {1, -1}, {1, 0},  {1, 1}};
  CHECK(got == want);
  CHECK(std::is_sorted(offs.begin(), offs.end(), lat_lex_less));
}

TEST_CASE("ball_nodes against a brute-force distance scan") {
  GridDomain dom(Shape::ball(2, pt_zero(), 1.0), 0.1, 0.2);
  for (double radius : {0.2, 0.35, 0.5}) {
    for (std::size_t c : {std::size_t(0), dom.node_count() / 2, dom.node_count() - 1}) {
      const auto got = dom.ball_nodes(c, radius);
      std::vector<std::size_t> want;
      for (std::size_t i = 0; i < dom.node_count(); ++i)
        if (pt_dist(dom.point(i), dom.point(c), 2) < radius * (1.0 - 1e-12)) want.push_back(i);
      CHECK(got == want);
    }
  }
  CHECK_THROWS_AS(dom.ball_nodes(0, 0.05), std::invalid_argument);
}

TEST_CASE("stencil table rows equal the eps-ball node sets") {
  GridDomain dom(Shape::ball(2, pt_zero(), 1.0), 0.1, 0.2);
  const auto& st = dom.stencil_data();
  const std::size_t w = dom.stencil_width();
  for (std::size_t i = 0; i < dom.node_count(); ++i) {
    if (!dom.is_interior(i)) continue;
    std::vector<std::size_t> row(st.begin() + i * w, st.begin() + (i + 1) * w);
    std::sort(row.begin(), row.end());
    CHECK(row == dom.ball_nodes(i, dom.eps()));
  }
}

TEST_CASE("interior classification matches the shape") {
  GridDomain dom(Shape::annulus(2, pt_zero(), 0.5, 1.5), 0.1, 0.2);
  for (std::size_t i = 0; i < dom.node_count(); ++i) {
    const Point x = dom.point(i);
    if (dom.is_interior(i)) {
      CHECK(dom.shape().contains(x));
    } else {
      CHECK(!dom.shape().contains(x));
      CHECK(dom.shape().boundary_distance(x) <= 0.2 * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("nearest node round trip") {
  GridDomain dom(Shape::ball(2, pt_zero(), 1.0), 0.1, 0.2);
  for (std::size_t i = 0; i < dom.node_count(); i += 7)
    CHECK(dom.nearest_node(dom.point(i)) == i);
  // an off-grid query snaps to the closest node
  const std::size_t j = dom.nearest_node(Point{0.51, 0.32, 0, 0});
  CHECK(dom.lattice(j) == Lattice{5, 3, 0, 0});
  // far outside the node set: still returns the closest existing node
  const std::size_t k = dom.nearest_node(Point{50.0, 0.0, 0, 0});
  CHECK(pt_dist(dom.point(k), Point{50.0, 0, 0, 0}, 2) < 50.0);
}

TEST_CASE("field JSON round trip is bit exact") {
  GridDomain dom(Shape::interval(0, 1), 0.05, 0.1);
  GridField f = field_from_function(dom, [](const Point& x) {
    return std::sin(37.0 * x[0]) / 3.0 + 1e-17 * x[0];
  });
  const std::string text = field_to_json_text(f);
  const GridField g = field_from_json_text(dom, text);
  REQUIRE(g.values.size() == f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) CHECK(g.values[i] == f.values[i]);
}

TEST_CASE("field extrema helpers") {
  GridDomain dom(Shape::interval(0, 1), 0.05, 0.1);
  GridField f = field_from_function(dom, [](const Point& x) { return x[0]; });
  CHECK(f.min_value() == doctest::Approx(-0.1));
  CHECK(f.max_value() == doctest::Approx(1.1));
  CHECK(f.min_on_strip() == doctest::Approx(-0.1));
  CHECK(f.max_on_strip() == doctest::Approx(1.1));
}

TEST_CASE("history keeps the exact position sum") {
  GameHistory h(Lattice{3, -1, 0, 0});
  h.append(Coin::PlayerI, Lattice{4, -1, 0, 0});
  h.append(Coin::Random, Lattice{4, 1, 0, 0});
  h.append(Coin::PlayerII, Lattice{2, 1, 0, 0});
  h.append(Coin::PlayerI, Lattice{2, 0, 0, 0});
  CHECK(h.rounds() == 4);
  CHECK(h.wins1 == 2);
  CHECK(h.wins2 == 1);
  CHECK(h.sum1 == Lattice{1, -1, 0, 0});
  CHECK(h.sum2 == Lattice{-2, 0, 0, 0});
  CHECK(h.sum3 == Lattice{0, 2, 0, 0});
  CHECK(h.position_sum_holds());
  CHECK(h.move_of_round(3) == Lattice{-2, 0, 0, 0});
}

TEST_CASE("rng determinism and stream independence") {
  Rng a(42), b(42), c(43);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next(), y = b.next(), z = c.next();
    all_equal = all_equal && (x == y);
    any_diff = any_diff || (x != z);
  }
  CHECK(all_equal);
  CHECK(any_diff);
  Rng t0 = Rng::for_trial(7, 0), t1 = Rng::for_trial(7, 1);
  CHECK(t0.next() != t1.next());
}

TEST_CASE("rng mappings stay in range") {
  Rng r(123);
  for (int i = 0; i < 2000; ++i) {
    const double u = r.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(r.below(7) < 7);
    const Point x = r.uniform_ball(3, 0.5);
    CHECK(pt_norm(x, 3) < 0.5);
    CHECK(x[3] == 0.0);
  }
}

TEST_CASE("rng coin frequencies at three sigma") {
  // alpha/2, alpha/2, beta split as used by the engine
  const GameParams g = make_params(4.0, 2, 0.1);
  Rng r(2024);
  const int n = 200000;
  int c1 = 0, c2 = 0;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    if (u < g.alpha / 2.0)
      ++c1;
    else if (u < g.alpha)
      ++c2;
  }
  const double p = g.alpha / 2.0;
  const double sigma = std::sqrt(n * p * (1.0 - p));
  CHECK(std::abs(c1 - n * p) < 3.0 * sigma);
  CHECK(std::abs(c2 - n * p) < 3.0 * sigma);
}

TEST_CASE("pairwise sum and sample estimates") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = double(i % 2);
  CHECK(pairwise_sum(v) == doctest::Approx(500.0).epsilon(1e-15));
  const ProbEstimate e = estimate_from_samples(v, 9);
  CHECK(e.trials == 1000);
  CHECK(e.mean == doctest::Approx(0.5).epsilon(1e-15));
  // sample std error of a fair Bernoulli: sqrt(0.25/(n-1)) / ~ 1/(2 sqrt(n))
  CHECK(e.std_error == doctest::Approx(std::sqrt(0.25 * 1000.0 / 999.0 / 1000.0)).epsilon(1e-12));
  CHECK(e.seed == 9);
}

TEST_CASE("chi-square survival function reference values") {
  // dof 2: sf(x) = exp(-x/2); dof 1: sf(1) = erfc(1/sqrt 2)
  CHECK(chi_square_sf(2.0, 2) == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
  CHECK(chi_square_sf(5.0, 2) == doctest::Approx(std::exp(-2.5)).epsilon(1e-10));
  CHECK(chi_square_sf(1.0, 1) == doctest::Approx(std::erfc(1.0 / std::sqrt(2.0))).epsilon(1e-10));
  CHECK(chi_square_sf(0.0, 3) == doctest::Approx(1.0));
  CHECK_THROWS_AS(chi_square_sf(1.0, 0), std::invalid_argument);
}

TEST_CASE("two-sample tests accept equal distributions") {
  Rng r(5);
  std::vector<long> a(10, 0), b(10, 0);
  std::vector<double> xs, ys;
  for (int i = 0; i < 20000; ++i) {
    ++a[r.below(10)];
    ++b[r.below(10)];
    xs.push_back(r.uniform());
    ys.push_back(r.uniform());
  }
  CHECK(chi_square_two_sample_pvalue(a, b) > 0.001);
  CHECK(ks_two_sample_pvalue(xs, ys) > 0.001);
  // and reject blatantly different ones
  std::vector<long> c(10, 0);
  c[0] = 20000;
  CHECK(chi_square_two_sample_pvalue(a, c) < 1e-6);
  std::vector<double> zs(xs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) zs[i] = xs[i] + 0.5;
  CHECK(ks_two_sample_pvalue(xs, zs) < 1e-6);
}

TEST_CASE("linear fit recovers an exact line") {
  std::vector<double> x, y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(0.1 * i);
    y.push_back(2.0 * 0.1 * i + 1.0);
  }
  const LinearFit f = linear_fit(x, y);
  CHECK(f.slope == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(linear_fit({1.0}, {1.0}), std::invalid_argument);
}
