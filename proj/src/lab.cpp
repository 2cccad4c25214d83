#include "tow/lab.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "tow/analysis.hpp"
#include "tow/engine.hpp"
#include "tow/walk.hpp"

namespace tow {

namespace {

using json = nlohmann::json;

std::vector<double> parse_numbers(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty number in spec: " + s);
    std::size_t pos = 0;
    out.push_back(std::stod(item, &pos));
    if (pos != item.size()) throw std::invalid_argument("bad number in spec: " + item);
  }
  return out;
}

Point to_point(const std::vector<double>& v, std::size_t begin, int n) {
  Point p = pt_zero();
  for (int i = 0; i < n; ++i) p[i] = v[begin + i];
  return p;
}

}  // namespace

Shape parse_shape(const std::string& spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("shape spec needs 'kind:...'");
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (kind == "interval") {
    const auto v = parse_numbers(rest);
    if (v.size() != 2) throw std::invalid_argument("interval spec needs 'interval:a,b'");
    return Shape::interval(v[0], v[1]);
  }
  if (kind == "box") {
    const std::size_t semi = rest.find(';');
    if (semi == std::string::npos) throw std::invalid_argument("box spec needs 'box:lo;hi'");
    const auto lo = parse_numbers(rest.substr(0, semi));
    const auto hi = parse_numbers(rest.substr(semi + 1));
    if (lo.size() != hi.size() || lo.empty() || lo.size() > std::size_t(kMaxDim))
      throw std::invalid_argument("box spec corners must align");
    const int n = int(lo.size());
    return Shape::box(n, to_point(lo, 0, n), to_point(hi, 0, n));
  }
  if (kind == "ball") {
    const auto v = parse_numbers(rest);
    if (v.size() < 3) throw std::invalid_argument("ball spec needs 'ball:n,c..,R'");
    const int n = int(v[0]);
    if (n < 1 || n > kMaxDim || v.size() != std::size_t(n) + 2)
      throw std::invalid_argument("ball spec needs 'ball:n,c..,R'");
    return Shape::ball(n, to_point(v, 1, n), v[std::size_t(n) + 1]);
  }
  if (kind == "annulus") {
    const auto v = parse_numbers(rest);
    if (v.size() < 4) throw std::invalid_argument("annulus spec needs 'annulus:n,c..,rin,rout'");
    const int n = int(v[0]);
    if (n < 1 || n > kMaxDim || v.size() != std::size_t(n) + 3)
      throw std::invalid_argument("annulus spec needs 'annulus:n,c..,rin,rout'");
    return Shape::annulus(n, to_point(v, 1, n), v[std::size_t(n) + 1], v[std::size_t(n) + 2]);
  }
  throw std::invalid_argument("unknown shape kind: " + kind);
}

GridField make_boundary_field(const GridDomain& dom, const std::string& spec, int n) {
  const std::size_t colon = spec.find(':');
  const std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "constant") {
    const auto v = parse_numbers(rest);
    if (v.size() != 1) throw std::invalid_argument("boundary spec 'constant:c'");
    return GridField(dom, v[0]);
  }
  if (kind == "affine" || kind == "affinepos") {
    const auto v = parse_numbers(rest);
    if (v.size() != std::size_t(n) + 1)
      throw std::invalid_argument("boundary spec 'affine:c0,a1,..,an'");
    const bool clamp = kind == "affinepos";
    return field_from_function(dom, [v, n, clamp](const Point& x) {
      double s = v[0];
      for (int i = 0; i < n; ++i) s += v[std::size_t(i) + 1] * x[i];
      return clamp ? std::max(s, v[0] / 2.0) : s;
    });
  }
  if (kind == "fundsol") {
    const auto v = parse_numbers(rest);
    if (v.size() != std::size_t(n) + 1)
      throw std::invalid_argument("boundary spec 'fundsol:p,z1,..,zn'");
    FundamentalSolutionSpec fs(v[0], n, to_point(v, 1, n));
    return field_from_function(dom, [fs](const Point& x) { return fundamental_solution(fs, x); });
  }
  if (kind == "gauss") {
    const auto v = parse_numbers(rest);
    if (v.size() != std::size_t(n) + 2)
      throw std::invalid_argument("boundary spec 'gauss:A,s,c1,..,cn'");
    const Point c = to_point(v, 2, n);
    return field_from_function(dom, [v, c, n](const Point& x) {
      return v[0] * std::exp(-pt_dist2(x, c, n) / (v[1] * v[1]));
    });
  }
  throw std::invalid_argument("unknown boundary family: " + kind);
}

namespace {

// --- config plumbing ------------------------------------------------------

template <typename T>
T take(json& resolved, const json& cfg, const std::string& key, T def) {
  T v = def;
  if (cfg.contains(key)) {
    try {
      v = cfg.at(key).get<T>();
    } catch (const json::exception&) {
      throw std::invalid_argument("config field '" + key + "' has the wrong type");
    }
  }
  resolved[key] = v;
  return v;
}

struct SolvedSetup {
  GameParams params;
  std::unique_ptr<GridDomain> dom;
  GridField boundary;
  SolveReport report;
};

SolvedSetup solve_from_config(json& resolved, const json& cfg, const std::string& def_domain,
                              const std::string& def_boundary) {
  const double p = take<double>(resolved, cfg, "p", 4.0);
  const int n = take<int>(resolved, cfg, "n", 2);
  const double eps = take<double>(resolved, cfg, "eps", 0.1);
  const double h = take<double>(resolved, cfg, "h", eps / 2.0);
  const double tol = take<double>(resolved, cfg, "tol", 1e-10);
  const long max_iters = take<long>(resolved, cfg, "max_iters", 1000000);
  const int threads = take<int>(resolved, cfg, "threads", 0);
  const std::string shape_spec = take<std::string>(resolved, cfg, "domain", def_domain);
  const std::string boundary_spec = take<std::string>(resolved, cfg, "boundary", def_boundary);

  SolvedSetup s{make_params(p, n, eps), nullptr, {}, {}};
  const Shape shape = parse_shape(shape_spec);
  if (shape.dim != n) throw std::invalid_argument("domain dimension does not match n");
  s.dom = std::make_unique<GridDomain>(shape, h, eps);
  s.boundary = make_boundary_field(*s.dom, boundary_spec, n);
  s.report = solve_dpp(*s.dom, s.boundary, s.params, tol, max_iters, threads);
  if (!s.report.converged)
    throw std::runtime_error("solver did not reach the requested residual");
  return s;
}

std::unique_ptr<Strategy> make_strategy(const std::string& spec, const GridDomain& dom,
                                        const GridField& u, int n) {
  const std::size_t colon = spec.find(':');
  const std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (kind == "greedy-max") return std::make_unique<GreedyStrategy>(u, true);
  if (kind == "greedy-min") return std::make_unique<GreedyStrategy>(u, false);
  if (kind == "stand") return std::make_unique<StandStillStrategy>();
  if (kind == "pull" || kind == "flee" || kind == "halfstep") {
    const auto v = parse_numbers(rest);
    if (v.size() != std::size_t(n))
      throw std::invalid_argument("strategy target needs " + std::to_string(n) + " coordinates");
    const Point z = to_point(v, 0, n);
    if (kind == "pull") return std::make_unique<PullStrategy>(z);
    if (kind == "flee") return std::make_unique<FleeStrategy>(z);
    return std::make_unique<HalfStepStrategy>(dom.lattice(dom.nearest_node(z)));
  }
  throw std::invalid_argument("unknown strategy: " + kind);
}

std::unique_ptr<StoppingRule> make_stop(const std::string& spec, const GridDomain& dom, int n) {
  const std::size_t colon = spec.find(':');
  const std::string kind = colon == std::string::npos ? spec : spec.substr(0, colon);
  if (kind == "boundary") return std::make_unique<BoundaryStop>();
  if (kind == "pointexit") {
    // pointexit:t1,..,tn;c1,..,cn;R
    const std::string rest = spec.substr(colon + 1);
    const std::size_t s1 = rest.find(';');
    const std::size_t s2 = rest.find(';', s1 == std::string::npos ? s1 : s1 + 1);
    if (s1 == std::string::npos || s2 == std::string::npos)
      throw std::invalid_argument("stop spec 'pointexit:target;center;radius'");
    const auto t = parse_numbers(rest.substr(0, s1));
    const auto c = parse_numbers(rest.substr(s1 + 1, s2 - s1 - 1));
    const auto r = parse_numbers(rest.substr(s2 + 1));
    if (t.size() != std::size_t(n) || c.size() != std::size_t(n) || r.size() != 1)
      throw std::invalid_argument("stop spec 'pointexit:target;center;radius'");
    const std::size_t target = dom.nearest_node(to_point(t, 0, n));
    return std::make_unique<PointOrExitStop>(dom.lattice(target), to_point(c, 0, n), r[0]);
  }
  throw std::invalid_argument("unknown stop rule: " + kind);
}

json estimate_json(const ProbEstimate& e) {
  return json{{"mean", e.mean},
              {"std_error", e.std_error},
              {"trials", e.trials},
              {"seed", e.seed},
              {"capped", e.capped}};
}

// --- commands -------------------------------------------------------------

json cmd_solve(json& resolved, const json& cfg) {
  SolvedSetup s = solve_from_config(resolved, cfg, "interval:0,1", "constant:1");
  const bool emit_field = take<bool>(resolved, cfg, "emit_field", false);
  json out;
  out["iterations"] = s.report.iterations;
  out["residual"] = s.report.final_residual;
  out["nodes"] = s.dom->node_count();
  out["interior_nodes"] = s.dom->interior_count();
  out["min"] = s.report.solution.min_value();
  out["max"] = s.report.solution.max_value();
  if (emit_field) out["field"] = json::parse(field_to_json_text(s.report.solution));
  out["pass"] = true;
  return out;
}

json cmd_play(json& resolved, const json& cfg) {
  SolvedSetup s = solve_from_config(resolved, cfg, "interval:0,1", "affine:0,1");
  const int n = s.params.n;
  const std::string si = take<std::string>(resolved, cfg, "strategy_i", "greedy-max");
  const std::string sii = take<std::string>(resolved, cfg, "strategy_ii", "greedy-min");
  const std::string stop_spec = take<std::string>(resolved, cfg, "stop", "boundary");
  const long trials = take<long>(resolved, cfg, "trials", 10000);
  const std::uint64_t seed = take<std::uint64_t>(resolved, cfg, "seed", 1);
  const long step_cap = take<long>(resolved, cfg, "step_cap", 10000000);

  std::vector<double> start_def(std::size_t(n), 0.0);
  {  // default start: centroid of the interior
    Point c = pt_zero();
    std::size_t cnt = 0;
    for (std::size_t i = 0; i < s.dom->node_count(); ++i)
      if (s.dom->is_interior(i)) {
        c = pt_add(c, s.dom->point(i));
        ++cnt;
      }
    for (int i = 0; i < n; ++i) start_def[std::size_t(i)] = c[i] / double(cnt);
  }
  const auto start = take<std::vector<double>>(resolved, cfg, "start", start_def);
  if (start.size() != std::size_t(n))
    throw std::invalid_argument("start needs n coordinates");
  const std::size_t x0 = s.dom->nearest_node(to_point(start, 0, n));
  if (!s.dom->is_interior(x0)) throw std::invalid_argument("start is not an interior node");

  auto strat_i = make_strategy(si, *s.dom, s.report.solution, n);
  auto strat_ii = make_strategy(sii, *s.dom, s.report.solution, n);
  auto stop = make_stop(stop_spec, *s.dom, n);

  StepContext ctx{*s.dom, s.params};
  SimOptions opt;
  opt.trials = trials;
  opt.seed = seed;
  opt.step_cap = step_cap;
  const auto outcomes = run_trials(s.dom->lattice(x0), *strat_i, *strat_ii, *stop, ctx, opt);

  std::map<std::string, long> histogram;
  std::vector<double> payoff(outcomes.size());
  long capped = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    ++histogram[outcomes[i].tag];
    if (outcomes[i].capped) ++capped;
    const auto idx = s.dom->find(outcomes[i].terminal);
    payoff[i] = idx ? s.boundary.values[*idx] : 0.0;
  }
  if (capped * 1000 > trials) throw std::runtime_error("too many trials hit the step cap");
  ProbEstimate est = estimate_from_samples(payoff, seed);
  est.capped = capped;

  json out;
  out["estimate"] = estimate_json(est);
  out["solved_value_at_start"] = s.report.solution.values[x0];
  out["stop_reason_histogram"] = histogram;
  out["pass"] = true;
  return out;
}

json cmd_cylinder(json& resolved, const json& cfg) {
  const double p = take<double>(resolved, cfg, "p", 4.0);
  const int n = take<int>(resolved, cfg, "n", 1);
  const double eps = take<double>(resolved, cfg, "eps", 0.01);
  const double r = take<double>(resolved, cfg, "r", 0.5);
  const double t = take<double>(resolved, cfg, "t", 0.1);
  const long trials = take<long>(resolved, cfg, "trials", 10000);
  const std::uint64_t seed = take<std::uint64_t>(resolved, cfg, "seed", 1);
  const bool decomposed = take<bool>(resolved, cfg, "decomposed", false);
  const int threads = take<int>(resolved, cfg, "threads", 0);

  const GameParams params = make_params(p, n, eps);
  const CylinderSpec spec(r, t, eps, n);
  const CylinderEstimate est = estimate_cylinder(spec, params, trials, seed, decomposed, threads);

  json out;
  out["p_bottom"] = estimate_json(est.p_bottom);
  out["p_top"] = estimate_json(est.p_top);
  out["p_side"] = estimate_json(est.p_side);
  out["counts"] = {est.counts[0], est.counts[1], est.counts[2]};
  out["bound_ratio"] = (1.0 - est.p_bottom.mean) * r / (t + eps);
  out["pass"] = true;
  return out;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    default:
      return "inconclusive";
  }
}

GridField normalized_at_origin(const GridField& u) {
  const double u0 = u.values[u.domain->nearest_node(pt_zero())];
  if (!(u0 > 0.0)) throw std::runtime_error("field is not positive at the origin");
  GridField out(*u.domain);
  for (std::size_t i = 0; i < u.values.size(); ++i) out.values[i] = u.values[i] / u0;
  return out;
}

json suite_oscillation(json& resolved, const json& cfg) {
  SolvedSetup s = solve_from_config(resolved, cfg, "ball:2,0,0,5", "affinepos:2,1,1");
  const GridField& u = s.report.solution;
  double fitted = 0.0;
  json rows = json::array();
  bool finite = true;
  for (double r = 1.0; r >= s.params.eps; r *= 0.5) {
    for (double rho = r / 2.0; rho >= s.params.eps; rho *= 0.5) {
      const double osc_r = oscillation(u, pt_zero(), r);
      const double osc_rho = oscillation(u, pt_zero(), rho);
      const double ratio = osc_r == 0.0 ? 0.0 : osc_rho / (osc_r * rho / r);
      if (!std::isfinite(ratio)) finite = false;
      fitted = std::max(fitted, ratio);
      rows.push_back(json{{"r", r}, {"rho", rho}, {"ratio", ratio}});
    }
  }
  json out;
  out["fitted_constant"] = fitted;
  out["rows"] = rows;
  out["pass"] = finite;
  return out;
}

json suite_lipschitz(json& resolved, const json& cfg) {
  SolvedSetup s = solve_from_config(resolved, cfg, "ball:2,0,0,5", "affinepos:2,1,1");
  const GridField& u = s.report.solution;
  const GridDomain& dom = *s.dom;
  const double r = take<double>(resolved, cfg, "r", 0.5);
  const std::uint64_t seed = take<std::uint64_t>(resolved, cfg, "seed", 1);
  std::vector<std::size_t> pool;
  dom.for_nodes_in_ball(pt_zero(), r, [&](std::size_t i) { pool.push_back(i); });
  if (pool.size() < 2) throw std::invalid_argument("lipschitz suite: ball too small");
  Rng rng(seed);
  double fitted = 0.0;
  long pairs = 0;
  for (int k = 0; k < 2000 && pairs < 500; ++k) {
    const std::size_t a = pool[rng.below(pool.size())];
    const std::size_t b = pool[rng.below(pool.size())];
    if (pt_dist(dom.point(a), dom.point(b), dom.dim()) < s.params.eps) continue;
    fitted = std::max(fitted, lipschitz_ratio(u, a, b, pt_zero(), r));
    ++pairs;
  }
  json out;
  out["fitted_constant"] = fitted;
  out["pairs"] = pairs;
  out["pass"] = std::isfinite(fitted);
  return out;
}

json suite_harnack(json& resolved, const json& cfg) {
  SolvedSetup s = solve_from_config(resolved, cfg, "ball:2,0,0,5", "constant:1");
  const long trials = take<long>(resolved, cfg, "trials", 0);
  const std::uint64_t seed = take<std::uint64_t>(resolved, cfg, "seed", 1);
  const GridField u = normalized_at_origin(s.report.solution);
  const HarnackHypotheses fitted = fit_harnack_hypotheses(u, 1.0, double(s.params.n));
  const HarnackCheckResult check = harnack_lemma_check(u, fitted);
  json out;
  out["fitted"] = {{"C", fitted.C}, {"gamma", fitted.gamma}, {"lambda", fitted.lambda}};
  out["bound"] = check.bound;
  out["sup_b1"] = check.sup_b1;
  out["verdict"] = verdict_name(check.verdict);
  json witnesses = json::array();
  for (const auto& w : check.witnesses)
    witnesses.push_back(json{{"r", w.r}, {"R", w.R}, {"lhs", w.lhs}, {"rhs", w.rhs},
                             {"condition", w.condition}});
  out["witnesses"] = witnesses;
  bool pass = check.verdict != Verdict::Fail;
  if (trials >= 0) {
    const NeighborComparabilityResult nc =
        neighbor_comparability_check(u, s.params, trials, seed);
    out["neighbor"] = {{"verdict", verdict_name(nc.verdict)},
                       {"pairs_checked", nc.pairs_checked},
                       {"pairs_failed", nc.pairs_failed},
                       {"min_ratio", nc.min_ratio},
                       {"threshold", nc.threshold}};
    if (trials > 0) out["neighbor"]["hit_probability"] = estimate_json(nc.hit_probability);
    pass = pass && nc.verdict == Verdict::Pass;
  }
  out["pass"] = pass;
  return out;
}

json suite_growth(json& resolved, const json& cfg) {
  SolvedSetup s = solve_from_config(resolved, cfg, "ball:2,0,0,5", "constant:1");
  const long trials = take<long>(resolved, cfg, "trials", 10000);
  const std::uint64_t seed = take<std::uint64_t>(resolved, cfg, "seed", 1);
  const double r = take<double>(resolved, cfg, "r", 0.5);
  const auto zv = take<std::vector<double>>(resolved, cfg, "z",
                                            std::vector<double>(std::size_t(s.params.n), 0.0));
  if (zv.size() != std::size_t(s.params.n))
    throw std::invalid_argument("growth suite: z needs n coordinates");
  const GridField u = normalized_at_origin(s.report.solution);
  const GrowthCheckResult g =
      growth_bound_check(u, s.params, to_point(zv, 0, s.params.n), r, trials, seed);
  json out;
  out["verdict"] = verdict_name(g.verdict);
  out["inf_over_ball"] = g.inf_over_ball;
  out["fitted_growth_constant"] = g.fitted_growth_constant;
  out["inner_hit"] = estimate_json(g.inner_hit);
  out["barrier_at_start"] = g.barrier_at_start;
  out["min_barrier_drift"] = g.min_barrier_drift;
  out["optional_stopping_ok"] = g.optional_stopping_ok;
  out["pass"] = g.verdict == Verdict::Pass;
  return out;
}

json suite_reach(json& resolved, const json& cfg) {
  const double p = take<double>(resolved, cfg, "p", 5.0);
  const int n = take<int>(resolved, cfg, "n", 1);
  const long trials = take<long>(resolved, cfg, "trials", 10000);
  const std::uint64_t seed = take<std::uint64_t>(resolved, cfg, "seed", 1);
  const int threads = take<int>(resolved, cfg, "threads", 0);
  const auto eps_list = take<std::vector<double>>(resolved, cfg, "eps_list",
                                                  std::vector<double>{0.1, 0.05});
  const auto x0v =
      take<std::vector<double>>(resolved, cfg, "x0", std::vector<double>(std::size_t(n), 0.25));
  if (x0v.size() != std::size_t(n))
    throw std::invalid_argument("reach suite: x0 needs n coordinates");
  const Point x0 = to_point(x0v, 0, n);
  json rows = json::array();
  bool positive = true;
  for (double eps : eps_list) {
    const GameParams params = make_params(p, n, eps);
    const ProbEstimate e = point_reach_probability(x0, params, trials, seed, threads);
    if (!(e.mean > 0.0)) positive = false;
    rows.push_back(json{{"eps", eps}, {"estimate", estimate_json(e)}});
  }
  json out;
  out["rows"] = rows;
  out["pass"] = positive;
  return out;
}

json cmd_verify(json& resolved, const json& cfg) {
  const std::string suite = take<std::string>(resolved, cfg, "suite", "harnack");
  if (suite == "oscillation") return suite_oscillation(resolved, cfg);
  if (suite == "lipschitz") return suite_lipschitz(resolved, cfg);
  if (suite == "harnack") return suite_harnack(resolved, cfg);
  if (suite == "growth") return suite_growth(resolved, cfg);
  if (suite == "reach") return suite_reach(resolved, cfg);
  throw std::invalid_argument("unknown verify suite: " + suite);
}

json cmd_sweep(json& resolved, const json& cfg) {
  const std::string kind = take<std::string>(resolved, cfg, "sweep", "oscillation");
  std::ostringstream csv;
  json out;
  if (kind == "oscillation") {
    const auto eps_list = take<std::vector<double>>(resolved, cfg, "eps_list",
                                                    std::vector<double>{0.2, 0.1});
    csv << "eps,rho,r,ratio\n";
    for (double eps : eps_list) {
      json sub_cfg = cfg;
      sub_cfg["eps"] = eps;
      sub_cfg.erase("eps_list");
      sub_cfg.erase("sweep");
      json sub_resolved;
      const json rep = suite_oscillation(sub_resolved, sub_cfg);
      for (const auto& row : rep.at("rows")) {
        csv << eps << ',' << row.at("rho").get<double>() << ',' << row.at("r").get<double>()
            << ',' << row.at("ratio").get<double>() << '\n';
      }
    }
  } else if (kind == "cylinder") {
    const auto t_list = take<std::vector<double>>(resolved, cfg, "t_list",
                                                  std::vector<double>{0.05, 0.1, 0.2});
    const auto eps_list =
        take<std::vector<double>>(resolved, cfg, "eps_list", std::vector<double>{0.01});
    csv << "t,eps,r,p_bottom_hat,stderr,bound_ratio\n";
    for (double t : t_list) {
      for (double eps : eps_list) {
        json sub_cfg = cfg;
        sub_cfg["t"] = t;
        sub_cfg["eps"] = eps;
        sub_cfg.erase("t_list");
        sub_cfg.erase("eps_list");
        sub_cfg.erase("sweep");
        json sub_resolved;
        const json rep = cmd_cylinder(sub_resolved, sub_cfg);
        const double r = sub_resolved.at("r").get<double>();
        csv << t << ',' << eps << ',' << r << ',' << rep.at("p_bottom").at("mean").get<double>()
            << ',' << rep.at("p_bottom").at("std_error").get<double>() << ','
            << rep.at("bound_ratio").get<double>() << '\n';
      }
    }
  } else {
    throw std::invalid_argument("unknown sweep kind: " + kind);
  }
  out["csv"] = csv.str();
  out["pass"] = true;
  return out;
}

}  // namespace

std::string run_experiment_json(const std::string& config_json) {
  json cfg;
  try {
    cfg = json::parse(config_json);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object()) throw std::invalid_argument("config must be a JSON object");
  json resolved;
  const std::string command = take<std::string>(resolved, cfg, "command", "");
  if (command.empty()) throw std::invalid_argument("config needs a 'command' field");

  json report;
  if (command == "solve")
    report = cmd_solve(resolved, cfg);
  else if (command == "play")
    report = cmd_play(resolved, cfg);
  else if (command == "cylinder")
    report = cmd_cylinder(resolved, cfg);
  else if (command == "verify")
    report = cmd_verify(resolved, cfg);
  else if (command == "sweep")
    report = cmd_sweep(resolved, cfg);
  else
    throw std::invalid_argument("unknown command: " + command);

  report["command"] = command;
  report["config"] = resolved;
  report["version"] = "1.0.0";
  return report.dump(2);
}

}  // namespace tow
