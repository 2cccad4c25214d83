#include "tow/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tow {

namespace {

enum class Region { Interior, Strip, Outside };

Region region_of(const GridDomain& dom, const Lattice& a) {
  const Point x = lat_to_point(a, dom.spacing());
  if (dom.shape().contains(x)) return Region::Interior;
  if (dom.shape().boundary_distance(x) <= dom.eps() * (1.0 + 1e-12)) return Region::Strip;
  return Region::Outside;
}

bool move_in_ball(const GridDomain& dom, const Lattice& mv) {
  const double h = dom.spacing(), eps = dom.eps();
  return lat_norm2(mv, dom.dim()) * h * h < eps * eps * (1.0 - 1e-12);
}

void validate_move(const GridDomain& dom, const Lattice& from, const Lattice& to,
                   const char* who) {
  const Lattice mv = lat_sub(to, from);
  if (!move_in_ball(dom, mv))
    throw std::runtime_error(std::string(who) + ": strategy moved outside the eps-ball");
  if (region_of(dom, to) == Region::Outside)
    throw std::runtime_error(std::string(who) + ": strategy moved outside the domain");
}

}  // namespace

std::optional<std::string> PointOrExitStop::check(const GameHistory& h, const StepContext& ctx) {
  const Lattice& cur = h.current();
  if (cur == target_) return "target";
  if (pt_dist(lat_to_point(cur, ctx.dom.spacing()), center_, ctx.dom.dim()) >= radius_)
    return "exit";
  return std::nullopt;
}

void play_round(GameHistory& h, Strategy& sI, Strategy& sII, const StepContext& ctx, Rng& rng) {
  const Lattice cur = h.current();
  const double u = rng.uniform();
  if (region_of(ctx.dom, cur) != Region::Interior) {
    // absorbing boundary strip: the position repeats whatever the coin says
    h.append(Coin::Random, cur);
  } else if (u < 0.5 * ctx.prm.alpha) {
    const Lattice next = sI.choose(h, ctx);
    validate_move(ctx.dom, cur, next, "player I");
    h.append(Coin::PlayerI, next);
  } else if (u < ctx.prm.alpha) {
    const Lattice next = sII.choose(h, ctx);
    validate_move(ctx.dom, cur, next, "player II");
    h.append(Coin::PlayerII, next);
  } else {
    const auto& offs = ctx.dom.ball_offsets();
    const Lattice& o = offs[rng.below(offs.size())];
    h.append(Coin::Random, lat_add(cur, o));
  }
  sI.observe(h, ctx);
  sII.observe(h, ctx);
}

TrialOutcome play_trial(const Lattice& x0, Strategy& sI, Strategy& sII, StoppingRule& stop,
                        const StepContext& ctx, Rng& rng, long step_cap) {
  GameHistory h(x0);
  TrialOutcome out;
  while (true) {
    if (region_of(ctx.dom, h.current()) != Region::Interior) {
      out.tag = "boundary";
      break;
    }
    if (auto t = stop.check(h, ctx)) {
      out.tag = *t;
      break;
    }
    if (out.steps >= step_cap) {
      out.tag = "cap";
      out.capped = true;
      break;
    }
    play_round(h, sI, sII, ctx, rng);
    ++out.steps;
  }
  out.terminal = h.current();
  out.sum1 = h.sum1;
  out.sum2 = h.sum2;
  out.sum3 = h.sum3;
  out.wins1 = h.wins1;
  out.wins2 = h.wins2;
  return out;
}

std::vector<TrialOutcome> run_trials(const Lattice& x0, const Strategy& sI, const Strategy& sII,
                                     const StoppingRule& stop, const StepContext& ctx,
                                     const SimOptions& opt) {
  std::vector<TrialOutcome> out(static_cast<std::size_t>(opt.trials));
  parallel_for_chunks(out.size(), opt.threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t t = b; t < e; ++t) {
      auto a = sI.clone();
      auto bII = sII.clone();
      auto st = stop.clone();
      Rng rng = Rng::for_trial(opt.seed, t);
      out[t] = play_trial(x0, *a, *bII, *st, ctx, rng, opt.step_cap);
    }
  });
  return out;
}

ProbEstimate simulate_value(const Lattice& x0, const Strategy& sI, const Strategy& sII,
                            const StoppingRule& stop, const GridField& payoff,
                            const StepContext& ctx, const SimOptions& opt) {
  const auto outcomes = run_trials(x0, sI, sII, stop, ctx, opt);
  long capped = 0;
  std::vector<double> samples(outcomes.size());
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].capped) ++capped;
    samples[i] = payoff.values[ctx.dom.index_of(outcomes[i].terminal)];
  }
  if (double(capped) > 0.001 * double(opt.trials))
    throw std::runtime_error("simulate_value: more than 0.1% of trials hit the step cap");
  ProbEstimate e = estimate_from_samples(samples, opt.seed);
  e.capped = capped;
  return e;
}

// --- greedy ----------------------------------------------------------------

GreedyStrategy::GreedyStrategy(const GridField& u, bool maximize) : u_(&u), maximize_(maximize) {
  if (!u.domain) throw std::invalid_argument("GreedyStrategy: field has no domain");
  u.domain->stencil_data();  // build the table up front
}

Lattice GreedyStrategy::choose(const GameHistory& h, const StepContext& ctx) {
  const GridDomain& dom = ctx.dom;
  const std::size_t i = dom.index_of(h.current());
  const auto& st = dom.stencil_data();
  const std::size_t w = dom.stencil_width();
  const std::uint32_t* row = st.data() + i * w;
  std::size_t best = row[0];
  double bv = u_->values[best];
  for (std::size_t k = 1; k < w; ++k) {
    const double v = u_->values[row[k]];
    const bool better = maximize_ ? v > bv : v < bv;
    if (better || (v == bv && lat_lex_less(dom.lattice(row[k]), dom.lattice(best)))) {
      best = row[k];
      bv = v;
    }
  }
  return dom.lattice(best);
}

// --- pull / flee / half-step ----------------------------------------------

namespace {

// In-ball offset whose endpoint is nearest (or farthest) from a target point;
// lattice-lexicographic tie-break.
Lattice extremal_offset(const GridDomain& dom, const Lattice& cur, const Point& target,
                        bool nearest) {
  const auto& offs = dom.ball_offsets();
  const double h = dom.spacing();
  Lattice best = offs[0];
  double bd = nearest ? std::numeric_limits<double>::infinity() : -1.0;
  for (const Lattice& o : offs) {
    const Point x = lat_to_point(lat_add(cur, o), h);
    const double d = pt_dist2(x, target, dom.dim());
    const bool better = nearest ? d < bd : d > bd;
    if (better || (d == bd && lat_lex_less(o, best))) {
      best = o;
      bd = d;
    }
  }
  return lat_add(cur, best);
}

}  // namespace

Lattice PullStrategy::choose(const GameHistory& h, const StepContext& ctx) {
  return extremal_offset(ctx.dom, h.current(), z_, true);
}

Lattice FleeStrategy::choose(const GameHistory& h, const StepContext& ctx) {
  return extremal_offset(ctx.dom, h.current(), z_, false);
}

Lattice HalfStepStrategy::choose(const GameHistory& h, const StepContext& ctx) {
  const GridDomain& dom = ctx.dom;
  const Lattice cur = h.current();
  const Lattice d = lat_sub(y_, cur);
  if (move_in_ball(dom, d)) return y_;  // jump straight to y when in reach
  const double dist = lat_norm(d, dom.dim()) * dom.spacing();
  const double step = 0.5 * dom.eps() / dist;
  Point target = lat_to_point(cur, dom.spacing());
  for (int i = 0; i < dom.dim(); ++i) target[i] += step * d[i] * dom.spacing();
  return extremal_offset(dom, cur, target, true);
}

// --- cancellation ----------------------------------------------------------

CancellationConfig make_cancellation_config(const GridDomain& dom, const Lattice& x,
                                            const Lattice& y, double r) {
  const double h = dom.spacing(), eps = dom.eps();
  if (!(r > 0.0)) throw std::invalid_argument("cancellation: requires r > 0");
  CancellationConfig cfg;
  cfg.x = x;
  cfg.y = y;
  cfg.r = r;
  const double dxy = lat_norm(lat_sub(x, y), dom.dim()) * h;
  cfg.m = static_cast<int>(std::floor(dxy / eps)) + 1;
  if (h > eps / double(cfg.m * (cfg.m + 1)) + 1e-12)
    throw std::invalid_argument(
        "cancellation: spacing too coarse for m steered target steps (need h <= eps/(m(m+1)))");
  if (x == y) {
    cfg.z = x;
    return cfg;
  }
  if (cfg.m == 1) {
    // degenerate |x-y| < eps case: aim at the snapped midpoint
    Lattice z = lat_zero();
    for (int i = 0; i < dom.dim(); ++i)
      z[i] = static_cast<int>(std::llround(0.5 * (x[i] + y[i])));
    cfg.z = z;
    return cfg;
  }
  if (dom.dim() < 2)
    throw std::invalid_argument("cancellation: no equidistant target exists on a line");
  const double target_r = (cfg.m - 1) * eps;
  Point px = lat_to_point(x, h), py = lat_to_point(y, h);
  Point mid = pt_scale(pt_add(px, py), 0.5);
  Point u = pt_scale(pt_sub(py, px), 1.0 / dxy);
  Point perp = pt_zero();
  perp[0] = -u[1];
  perp[1] = u[0];
  const double s2 = target_r * target_r - 0.25 * dxy * dxy;
  const double s = std::sqrt(std::max(0.0, s2));
  Lattice z = lat_zero();
  for (int i = 0; i < dom.dim(); ++i)
    z[i] = static_cast<int>(std::llround((mid[i] + s * perp[i]) / h));
  const Point pz = lat_to_point(z, h);
  const double tol = h * std::sqrt(double(dom.dim())) * 1.01;
  if (std::abs(pt_dist(pz, px, dom.dim()) - target_r) > tol ||
      std::abs(pt_dist(pz, py, dom.dim()) - target_r) > tol)
    throw std::runtime_error("cancellation: target snap exceeded grid tolerance");
  cfg.z = z;
  return cfg;
}

CancellationStrategy::CancellationStrategy(const CancellationConfig& cfg, Role role)
    : cfg_(cfg), role_(role) {
  start_ = role == Role::PlayerII ? cfg.x : cfg.y;
}

void CancellationStrategy::observe(const GameHistory& h, const StepContext&) {
  const Coin own = role_ == Role::PlayerI ? Coin::PlayerI : Coin::PlayerII;
  const Coin opp = role_ == Role::PlayerI ? Coin::PlayerII : Coin::PlayerI;
  for (; cursor_ < h.rounds(); ++cursor_) {
    const std::size_t j = cursor_ + 1;
    const Coin c = h.coins[j - 1];
    const Lattice mv = h.move_of_round(j);
    if (c == opp) {
      uncancelled_.push_back(mv);
    } else if (c == own) {
      if (pending_cancel_) {
        uncancelled_.pop_front();
      } else {
        target_sum_ = lat_add(target_sum_, mv);
        ++targets_done_;
      }
      pending_cancel_ = false;
    }
  }
}

Lattice CancellationStrategy::choose(const GameHistory& h, const StepContext& ctx) {
  const Lattice cur = h.current();
  if (!uncancelled_.empty()) {
    pending_cancel_ = true;
    return lat_add(cur, lat_neg(uncancelled_.front()));
  }
  pending_cancel_ = false;
  const int left = cfg_.m - targets_done_;
  if (left <= 0)
    throw std::logic_error("cancellation: target steps exhausted but the game is still running");
  const Lattice d = lat_sub(lat_sub(cfg_.z, start_), target_sum_);
  if (left == 1) {
    if (!move_in_ball(ctx.dom, d))
      throw std::runtime_error("cancellation: final target step left the eps-ball");
    return lat_add(cur, d);
  }
  Point ideal = pt_zero();
  for (int i = 0; i < ctx.dom.dim(); ++i) ideal[i] = double(d[i]) / double(left);
  // nearest in-ball lattice offset to the steered ideal step
  const auto& offs = ctx.dom.ball_offsets();
  Lattice best = offs[0];
  double bd = std::numeric_limits<double>::infinity();
  for (const Lattice& o : offs) {
    double dist = 0.0;
    for (int i = 0; i < ctx.dom.dim(); ++i) {
      const double dd = double(o[i]) - ideal[i];
      dist += dd * dd;
    }
    if (dist < bd || (dist == bd && lat_lex_less(o, best))) {
      best = o;
      bd = dist;
    }
  }
  return lat_add(cur, best);
}

std::optional<std::string> CancellationStop::check(const GameHistory& h, const StepContext& ctx) {
  const long net_canceller =
      canceller_ == Role::PlayerII ? h.wins2 - h.wins1 : h.wins1 - h.wins2;
  if (net_canceller >= cfg_.m) return "i";
  const long opp_quota =
      static_cast<long>(std::ceil(2.0 * cfg_.r / ctx.prm.eps));
  if (-net_canceller >= opp_quota) return "ii";
  const double h_ = ctx.dom.spacing();
  if (lat_norm(h.sum3, ctx.dom.dim()) * h_ >= 2.0 * cfg_.r) return "iii";
  return std::nullopt;
}

ConditionIEstimate estimate_condition_i_probability(const CancellationConfig& cfg, Role canceller,
                                                    const Strategy& opponent,
                                                    const StepContext& ctx,
                                                    const SimOptions& opt) {
  CancellationStrategy cstrat(cfg, canceller);
  CancellationStop cstop(cfg, canceller);
  const Lattice start = canceller == Role::PlayerII ? cfg.x : cfg.y;
  const Strategy& sI = canceller == Role::PlayerI ? static_cast<const Strategy&>(cstrat) : opponent;
  const Strategy& sII =
      canceller == Role::PlayerII ? static_cast<const Strategy&>(cstrat) : opponent;

  const auto outcomes = run_trials(start, sI, sII, cstop, ctx, opt);
  ConditionIEstimate res;
  std::vector<double> ind(outcomes.size());
  const Lattice want = lat_sub(cfg.z, start);
  for (std::size_t t = 0; t < outcomes.size(); ++t) {
    const bool is_i = outcomes[t].tag == "i";
    ind[t] = is_i ? 1.0 : 0.0;
    if (is_i) {
      ++res.tag_i_trials;
      if (lat_add(outcomes[t].sum1, outcomes[t].sum2) != want) ++res.ledger_failures;
      res.tag_i_terminals.push_back(outcomes[t].terminal);
    }
  }
  res.prob = estimate_from_samples(ind, opt.seed);
  return res;
}

}  // namespace tow
