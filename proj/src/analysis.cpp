#include "tow/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct BallStats {
  double mn = kInf;
  double mx = -kInf;
  std::size_t count = 0;
};

BallStats ball_stats(const GridField& u, const Point& center, double rho) {
  BallStats s;
  u.domain->for_nodes_in_ball(center, rho, [&](std::size_t i) {
    s.mn = std::min(s.mn, u.values[i]);
    s.mx = std::max(s.mx, u.values[i]);
    ++s.count;
  });
  return s;
}

}  // namespace

double oscillation(const GridField& u, const Point& center, double rho) {
  if (!u.domain) throw std::invalid_argument("oscillation: field has no domain");
  const BallStats s = ball_stats(u, center, rho);
  if (s.count == 0) throw std::invalid_argument("oscillation: ball contains no grid node");
  return s.mx - s.mn;
}

double lipschitz_ratio(const GridField& u, std::size_t x, std::size_t y, const Point& z0,
                       double r) {
  if (!u.domain) throw std::invalid_argument("lipschitz_ratio: field has no domain");
  const double osc6 = oscillation(u, z0, 6.0 * r);
  if (osc6 == 0.0) return 0.0;
  const GridDomain& dom = *u.domain;
  const double d = pt_dist(dom.point(x), dom.point(y), dom.dim());
  if (d == 0.0) return 0.0;
  return std::abs(u.values[x] - u.values[y]) * r / (d * osc6);
}

double harnack_constant(const HarnackHypotheses& h) {
  if (!(h.C >= 1.0) || !(h.gamma > 0.0) || !(h.lambda > 0.0))
    throw std::invalid_argument("harnack_constant: requires C >= 1, gamma > 0, lambda > 0");
  return std::pow(std::pow(2.0, 1.0 + h.lambda) * h.C, 1.0 + h.lambda / h.gamma);
}

namespace {

// Sampled (center, radius) statistics for the two Harnack hypotheses:
// dyadic radii R = 2^{-k} down to twice the grid spacing, centers on a
// thinned sub-lattice of |x| <= 2.
struct HypothesisScan {
  std::vector<std::size_t> centers;
  std::vector<double> radii;                 // descending, largest first
  std::vector<std::vector<BallStats>> stats; // stats[c][k] over B_radii[k](centers[c])
};

HypothesisScan scan_hypotheses(const GridField& u) {
  const GridDomain& dom = *u.domain;
  HypothesisScan sc;
  for (double R = 1.0; R >= 2.0 * dom.spacing(); R *= 0.5) sc.radii.push_back(R);
  if (sc.radii.empty()) return sc;

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < dom.node_count(); ++i)
    if (pt_norm(dom.point(i), dom.dim()) <= 2.0) candidates.push_back(i);
  const std::size_t stride = std::max<std::size_t>(1, candidates.size() / 64);
  for (std::size_t i = 0; i < candidates.size(); i += stride) sc.centers.push_back(candidates[i]);

  sc.stats.resize(sc.centers.size());
  const double rmax = sc.radii.front();
  for (std::size_t c = 0; c < sc.centers.size(); ++c) {
    sc.stats[c].assign(sc.radii.size(), BallStats{});
    const Point x = dom.point(sc.centers[c]);
    dom.for_nodes_in_ball(x, rmax, [&](std::size_t j) {
      const double d = pt_dist(x, dom.point(j), dom.dim());
      for (std::size_t k = 0; k < sc.radii.size(); ++k) {
        if (d < sc.radii[k]) {
          BallStats& s = sc.stats[c][k];
          s.mn = std::min(s.mn, u.values[j]);
          s.mx = std::max(s.mx, u.values[j]);
          ++s.count;
        }
      }
    });
  }
  return sc;
}

void check_normalized_positive(const GridField& u) {
  if (!u.domain) throw std::invalid_argument("harnack: field has no domain");
  const GridDomain& dom = *u.domain;
  const std::size_t origin = dom.nearest_node(pt_zero());
  if (std::abs(u.values[origin] - 1.0) > 1e-9)
    throw std::invalid_argument("harnack: field is not normalized to 1 at the origin");
  for (std::size_t i = 0; i < dom.node_count(); ++i) {
    if (pt_norm(dom.point(i), dom.dim()) <= 3.0 && !(u.values[i] > 0.0))
      throw std::invalid_argument("harnack: field is not positive near the origin");
  }
}

}  // namespace

HarnackCheckResult harnack_lemma_check(const GridField& u, const HarnackHypotheses& h) {
  check_normalized_positive(u);
  harnack_constant(h);  // validates h
  const GridDomain& dom = *u.domain;
  HarnackCheckResult out;
  const HypothesisScan sc = scan_hypotheses(u);
  if (sc.radii.empty() || sc.centers.empty()) return out;  // Inconclusive

  bool ok = true;
  for (std::size_t c = 0; c < sc.centers.size(); ++c) {
    const Point x = dom.point(sc.centers[c]);
    for (std::size_t kr = 0; kr < sc.radii.size(); ++kr) {
      const BallStats& sr = sc.stats[c][kr];
      if (sr.count == 0) continue;
      // growth condition: inf over B_r(x) <= C r^{-lambda}
      const double r = sc.radii[kr];
      if (sr.mn > h.C * std::pow(r, -h.lambda) * (1.0 + 1e-12)) {
        ok = false;
        out.witnesses.push_back({x, r, 0.0, sr.mn, h.C * std::pow(r, -h.lambda), "growth"});
      }
      // oscillation condition against every larger sampled radius
      for (std::size_t kR = 0; kR < kr; ++kR) {
        const BallStats& sR = sc.stats[c][kR];
        if (sR.count == 0) continue;
        const double R = sc.radii[kR];
        const double lhs = sr.mx - sr.mn;
        const double rhs = h.C * std::pow(r / R, h.gamma) * sR.mx;
        if (lhs > rhs * (1.0 + 1e-12)) {
          ok = false;
          out.witnesses.push_back({x, r, R, lhs, rhs, "oscillation"});
        }
      }
    }
  }
  out.hypotheses_hold = ok;
  const BallStats b1 = ball_stats(u, pt_zero(), 1.0);
  out.sup_b1 = b1.count ? b1.mx : 0.0;
  out.bound = harnack_constant(h);
  if (!ok) {
    out.verdict = Verdict::Fail;
    return out;
  }
  out.verdict = out.sup_b1 <= out.bound ? Verdict::Pass : Verdict::Fail;
  return out;
}

HarnackHypotheses fit_harnack_hypotheses(const GridField& u, double gamma, double lambda) {
  check_normalized_positive(u);
  if (!(gamma > 0.0) || !(lambda > 0.0))
    throw std::invalid_argument("fit_harnack_hypotheses: exponents must be positive");
  const HypothesisScan sc = scan_hypotheses(u);
  if (sc.radii.empty() || sc.centers.empty())
    throw std::invalid_argument("fit_harnack_hypotheses: grid too coarse to sample radii");
  double C = 1.0;
  for (std::size_t c = 0; c < sc.centers.size(); ++c) {
    for (std::size_t kr = 0; kr < sc.radii.size(); ++kr) {
      const BallStats& sr = sc.stats[c][kr];
      if (sr.count == 0) continue;
      const double r = sc.radii[kr];
      C = std::max(C, sr.mn * std::pow(r, lambda));
      for (std::size_t kR = 0; kR < kr; ++kR) {
        const BallStats& sR = sc.stats[c][kR];
        if (sR.count == 0 || sR.mx <= 0.0) continue;
        const double R = sc.radii[kR];
        C = std::max(C, (sr.mx - sr.mn) / (std::pow(r / R, gamma) * sR.mx));
      }
    }
  }
  return HarnackHypotheses{C, gamma, lambda};
}

FundamentalSolutionSpec::FundamentalSolutionSpec(double p_, int n_, const Point& z_)
    : p(p_), n(n_), z(z_) {
  if (!(p > 1.0)) throw std::invalid_argument("fundamental solution: requires p > 1");
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("fundamental solution: bad dimension");
  if (!(pt_norm(z, n) > 0.0) || !(pt_norm(z, n) < 3.0))
    throw std::invalid_argument("fundamental solution: requires 0 < |z| < 3");
  kappa = (double(n) - p) / (p - 1.0);
}

double fundamental_solution_radial(const FundamentalSolutionSpec& spec, double rho) {
  const double zr = pt_norm(spec.z, spec.n);
  if (std::abs(spec.p - double(spec.n)) < 1e-12) {
    if (!(rho > 0.0)) throw std::invalid_argument("fundamental solution: log branch needs rho > 0");
    return 2.0 * std::log(3.0 / rho) / std::log(3.0 / zr);
  }
  if (spec.kappa > 0.0 && !(rho > 0.0))
    throw std::invalid_argument("fundamental solution: singular at the center for p < n");
  const double num = std::pow(rho, -spec.kappa) - std::pow(3.0, -spec.kappa);
  const double den = std::pow(zr, -spec.kappa) - std::pow(3.0, -spec.kappa);
  return 2.0 * num / den;
}

double fundamental_solution(const FundamentalSolutionSpec& spec, const Point& x) {
  return fundamental_solution_radial(spec, pt_dist(x, spec.z, spec.n));
}

namespace {

// Radial harmonic profile, 1 at rho = inner, 0 at rho = outer.
double barrier_radial(int n, double inner, double outer, double rho) {
  if (!(inner > 0.0) || !(outer > inner))
    throw std::invalid_argument("barrier: requires 0 < inner < outer");
  if (!(rho > 0.0)) throw std::invalid_argument("barrier: requires rho > 0");
  switch (n) {
    case 1:
      return (outer - rho) / (outer - inner);
    case 2:
      return std::log(outer / rho) / std::log(outer / inner);
    default: {
      const double a = std::pow(rho, 2.0 - n);
      return (a - std::pow(outer, 2.0 - n)) /
             (std::pow(inner, 2.0 - n) - std::pow(outer, 2.0 - n));
    }
  }
}

}  // namespace

double harmonic_barrier(int n, const Point& z, double inner, double outer, const Point& x) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("barrier: bad dimension");
  return barrier_radial(n, inner, outer, pt_dist(x, z, n));
}

double barrier_one_step_drift(int n, const Point& z, double inner, double outer, const Point& x,
                              const GameParams& params) {
  const double rho = pt_dist(x, z, n);
  if (!(rho > params.eps))
    throw std::invalid_argument("barrier drift: position must be further than eps from the pole");
  const double v = barrier_radial(n, inner, outer, rho);
  const double vm = barrier_radial(n, inner, outer, rho - params.eps);
  const double vp = barrier_radial(n, inner, outer, rho + params.eps);
  // the random move preserves the harmonic mean value, so its contribution is
  // beta * v(x)
  return params.beta * v + 0.5 * params.alpha * (vm + vp) - v;
}

BarrierShapeCheck barrier_shape_check(int n, const Point& z, double inner, double outer,
                                      double tol) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("barrier: bad dimension");
  BarrierShapeCheck out;
  out.min_second_difference = kInf;
  out.max_radial_increment = -kInf;
  const double dt = 1e-3;
  // radial convexity / monotonicity on [inner/2, 2*outer]
  for (double rho = 0.5 * inner; rho <= 2.0 * outer; rho += 0.01 * inner) {
    const double a = barrier_radial(n, inner, outer, rho);
    const double b = barrier_radial(n, inner, outer, rho + dt);
    const double c = barrier_radial(n, inner, outer, rho + 2.0 * dt);
    out.min_second_difference = std::min(out.min_second_difference, a - 2.0 * b + c);
    out.max_radial_increment = std::max(out.max_radial_increment, b - a);
  }
  out.ok = out.min_second_difference >= -tol && out.max_radial_increment <= tol;
  return out;
}

GrowthCheckResult growth_bound_check(const GridField& u, const GameParams& params, const Point& z,
                                     double r, long trials, std::uint64_t seed) {
  if (!u.domain) throw std::invalid_argument("growth check: field has no domain");
  const GridDomain& dom = *u.domain;
  const int n = dom.dim();
  if (!(r > 2.0 * params.eps) || !(r < 1.0))
    throw std::invalid_argument("growth check: requires r in (2 eps, 1)");
  if (!dom.shape().contains(z))
    throw std::invalid_argument("growth check: z must lie inside the domain");

  GrowthCheckResult out;
  const BallStats inner_ball = ball_stats(u, z, r);
  if (inner_ball.count == 0)
    throw std::invalid_argument("growth check: B_r(z) contains no grid node");
  out.inf_over_ball = inner_ball.mn;
  out.fitted_growth_constant = inner_ball.mn * std::pow(r, n);

  // annulus B_outer(z) \ B_r(z) for the pull-strategy game, shrunk when the
  // paper-scale outer radius 4 does not fit inside the domain
  double outer = 4.0;
  const double room = dom.shape().boundary_distance(z);
  if (outer + 2.0 * params.eps > room) outer = room - 2.0 * params.eps;
  if (!(outer > r + 4.0 * params.eps))
    throw std::invalid_argument("growth check: annulus does not fit the domain");

  GridDomain annulus(Shape::annulus(n, z, r, outer), dom.spacing(), params.eps);

  // start at the normalization point when it lies in the annulus, else at the
  // middle radius on the first axis
  Point start = pt_zero();
  if (!annulus.shape().contains(start)) {
    start = z;
    start[0] += 0.5 * (r + outer);
  }
  const std::size_t s0 = annulus.nearest_node(start);
  const Point start_pt = annulus.point(s0);
  out.barrier_at_start = harmonic_barrier(n, z, r, outer, start_pt);

  StepContext ctx{annulus, params};
  PullStrategy pull(z);
  FleeStrategy flee(z);
  BoundaryStop stop;
  SimOptions opt;
  opt.trials = trials;
  opt.seed = seed;
  const auto outcomes = run_trials(annulus.lattice(s0), pull, flee, stop, ctx, opt);
  std::vector<double> hits(outcomes.size());
  const double mid = 0.5 * (r + outer);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const Point t = lat_to_point(outcomes[i].terminal, annulus.spacing());
    hits[i] = (!outcomes[i].capped && pt_dist(t, z, n) <= mid) ? 1.0 : 0.0;
  }
  out.inner_hit = estimate_from_samples(hits, seed);

  // the barrier drift is a closed-form function of the radius, so check it on
  // every node the trajectories can visit instead of sampling paths
  double min_drift = kInf;
  for (std::size_t i = 0; i < annulus.node_count(); ++i) {
    if (!annulus.is_interior(i)) continue;
    min_drift = std::min(min_drift,
                         barrier_one_step_drift(n, z, r, outer, annulus.point(i), params));
  }
  out.min_barrier_drift = min_drift;

  const double overshoot = std::pow(2.0, n + 1);  // covers v just inside the inner sphere
  out.optional_stopping_ok =
      out.barrier_at_start <= overshoot * out.inner_hit.mean + 3.0 * out.inner_hit.std_error;

  const bool drift_ok = min_drift >= -1e-8;
  out.verdict = (drift_ok && out.optional_stopping_ok) ? Verdict::Pass : Verdict::Fail;
  return out;
}

double harnack_quotient(const GridField& u, const Point& center, double radius) {
  if (!u.domain) throw std::invalid_argument("harnack_quotient: field has no domain");
  const BallStats s = ball_stats(u, center, radius);
  if (s.count == 0) throw std::invalid_argument("harnack_quotient: ball contains no grid node");
  if (!(s.mn > 0.0))
    throw std::invalid_argument("harnack_quotient: field is not positive on the ball");
  return s.mx / s.mn;
}

NeighborComparabilityResult neighbor_comparability_check(const GridField& u,
                                                         const GameParams& params, long trials,
                                                         std::uint64_t seed, long max_pairs) {
  if (!u.domain) throw std::invalid_argument("neighbor check: field has no domain");
  const GridDomain& dom = *u.domain;
  NeighborComparabilityResult out;
  out.threshold = std::pow(0.5 * params.alpha, 20.0);
  out.min_ratio = kInf;

  std::vector<std::size_t> interior;
  for (std::size_t i = 0; i < dom.node_count(); ++i)
    if (dom.is_interior(i)) interior.push_back(i);
  if (interior.empty()) throw std::invalid_argument("neighbor check: no interior nodes");

  const double reach = 10.0 * params.eps;
  const std::size_t stride = std::max<std::size_t>(1, interior.size() / 256);
  for (std::size_t a = 0; a < interior.size() && out.pairs_checked < max_pairs; a += stride) {
    const std::size_t i = interior[a];
    const Point xi = dom.point(i);
    dom.for_nodes_in_ball(xi, reach * (1.0 + 1e-12), [&](std::size_t j) {
      if (!dom.is_interior(j) || out.pairs_checked >= max_pairs) return;
      ++out.pairs_checked;
      const double uy = u.values[j];
      if (!(uy > 0.0)) return;  // comparison is vacuous against a non-positive value
      const double ratio = u.values[i] / uy;
      out.min_ratio = std::min(out.min_ratio, ratio);
      if (ratio < out.threshold) ++out.pairs_failed;
    });
  }

  bool mc_ok = true;
  if (trials > 0) {
    // hardest representative pair: two interior nodes near distance 10 eps,
    // close to the domain's normalization point
    const std::size_t i0 = dom.nearest_node(pt_zero());
    std::size_t best = i0;
    double best_d = -1.0;
    dom.for_nodes_in_ball(dom.point(i0), reach * (1.0 + 1e-12), [&](std::size_t j) {
      if (!dom.is_interior(j)) return;
      const double d = pt_dist(dom.point(i0), dom.point(j), dom.dim());
      if (d > best_d) {
        best_d = d;
        best = j;
      }
    });
    StepContext ctx{dom, params};
    HalfStepStrategy half(dom.lattice(best));
    FleeStrategy flee(dom.point(best));
    PointOrExitStop stop(dom.lattice(best), dom.point(i0), 2.0 + params.eps);
    SimOptions opt;
    opt.trials = trials;
    opt.seed = seed;
    const auto outcomes = run_trials(dom.lattice(i0), half, flee, stop, ctx, opt);
    std::vector<double> hit(outcomes.size());
    for (std::size_t k = 0; k < outcomes.size(); ++k)
      hit[k] = outcomes[k].tag == "target" ? 1.0 : 0.0;
    out.hit_probability = estimate_from_samples(hit, seed);
    mc_ok = out.hit_probability.mean >= out.threshold - 3.0 * out.hit_probability.std_error;
  }

  out.verdict = (out.pairs_failed == 0 && mc_ok) ? Verdict::Pass : Verdict::Fail;
  return out;
}

ProbEstimate point_reach_probability(const Point& x0, const GameParams& params, long trials,
                                     std::uint64_t seed, int threads) {
  if (!(params.p > double(params.n)))
    throw std::invalid_argument("point reach: requires p > n");
  if (!(pt_norm(x0, params.n) < 0.5))
    throw std::invalid_argument("point reach: requires |x0| < 1/2");
  GridDomain dom(Shape::ball(params.n, pt_zero(), 1.0), 0.5 * params.eps, params.eps);
  const std::size_t origin = dom.index_of(lat_zero());
  const std::size_t start = dom.nearest_node(x0);
  StepContext ctx{dom, params};
  PullStrategy pull(pt_zero());
  FleeStrategy flee(pt_zero());
  PointOrExitStop stop(dom.lattice(origin), pt_zero(), 1.0);
  SimOptions opt;
  opt.trials = trials;
  opt.seed = seed;
  opt.threads = threads;
  const auto outcomes = run_trials(dom.lattice(start), pull, flee, stop, ctx, opt);
  std::vector<double> hit(outcomes.size());
  for (std::size_t k = 0; k < outcomes.size(); ++k)
    hit[k] = outcomes[k].tag == "target" ? 1.0 : 0.0;
  return estimate_from_samples(hit, seed);
}

}  // namespace tow
