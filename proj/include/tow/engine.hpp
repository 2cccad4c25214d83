#pragma once

#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tow/grid.hpp"
#include "tow/history.hpp"
#include "tow/params.hpp"
#include "tow/rng.hpp"
#include "tow/stats.hpp"

namespace tow {

struct StepContext {
  const GridDomain& dom;
  const GameParams& prm;
};

// A player's move policy. One instance is cloned per trial, so subclasses may
// keep incremental per-trial state as long as it is a pure function of the
// observed history. All randomness lives in the engine's RNG; given the
// history the chosen move is deterministic.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::unique_ptr<Strategy> clone() const = 0;

  // Called after every appended round, whoever moved.
  virtual void observe(const GameHistory& h, const StepContext& ctx) {
    (void)h;
    (void)ctx;
  }

  // Next position when this player wins the toss. Must lie strictly inside
  // the eps-ball around the current position; the engine enforces this.
  virtual Lattice choose(const GameHistory& h, const StepContext& ctx) = 0;
};

// Stop verdicts are string tags; "boundary" is reserved for the built-in
// absorption rule that fires whenever the token is in the boundary strip.
class StoppingRule {
 public:
  virtual ~StoppingRule() = default;
  virtual std::unique_ptr<StoppingRule> clone() const = 0;
  virtual std::optional<std::string> check(const GameHistory& h, const StepContext& ctx) = 0;
};

// Stops only at the boundary strip (the engine handles that), i.e. the plain
// exit time tau.
class BoundaryStop final : public StoppingRule {
 public:
  std::unique_ptr<StoppingRule> clone() const override { return std::make_unique<BoundaryStop>(); }
  std::optional<std::string> check(const GameHistory&, const StepContext&) override {
    return std::nullopt;
  }
};

// Stops with tag "target" on reaching the given node, "exit" on leaving the
// open ball around `center`.
class PointOrExitStop final : public StoppingRule {
 public:
  PointOrExitStop(const Lattice& target, const Point& center, double radius)
      : target_(target), center_(center), radius_(radius) {}
  std::unique_ptr<StoppingRule> clone() const override {
    return std::make_unique<PointOrExitStop>(*this);
  }
  std::optional<std::string> check(const GameHistory& h, const StepContext& ctx) override;

 private:
  Lattice target_;
  Point center_;
  double radius_;
};

struct TrialOutcome {
  std::string tag;
  Lattice terminal = lat_zero();
  long steps = 0;
  bool capped = false;
  Lattice sum1 = lat_zero();
  Lattice sum2 = lat_zero();
  Lattice sum3 = lat_zero();
  long wins1 = 0;
  long wins2 = 0;
};

struct SimOptions {
  long trials = 10000;
  std::uint64_t seed = 1;
  long step_cap = 10000000;
  int threads = 0;
};

// Appends one round to the history: with probability alpha/2 Player I moves,
// alpha/2 Player II moves, beta a uniformly random in-ball node. A position
// in the boundary strip is absorbing (the position repeats). Throws if a
// strategy proposes a move outside the open eps-ball.
void play_round(GameHistory& h, Strategy& sI, Strategy& sII, const StepContext& ctx, Rng& rng);

// Runs one full trial until the stopping rule or boundary absorption fires.
TrialOutcome play_trial(const Lattice& x0, Strategy& sI, Strategy& sII, StoppingRule& stop,
                        const StepContext& ctx, Rng& rng, long step_cap = 10000000);

// Independent trials in parallel; outcome i always comes from
// Rng::for_trial(seed, i), so results are reproducible and thread-count
// independent.
std::vector<TrialOutcome> run_trials(const Lattice& x0, const Strategy& sI, const Strategy& sII,
                                     const StoppingRule& stop, const StepContext& ctx,
                                     const SimOptions& opt);

// Monte Carlo mean / standard error of payoff(x_stop). Throws if more than
// 0.1% of trials hit the step cap.
ProbEstimate simulate_value(const Lattice& x0, const Strategy& sI, const Strategy& sII,
                            const StoppingRule& stop, const GridField& payoff,
                            const StepContext& ctx, const SimOptions& opt);

// --- Concrete strategies -------------------------------------------------

// Steps to the argmax (or argmin) of u over the eps-stencil; ties broken by
// the smallest lattice-lexicographic node. The extremum is attained on the
// grid, so no slack term is needed.
class GreedyStrategy final : public Strategy {
 public:
  GreedyStrategy(const GridField& u, bool maximize);
  std::unique_ptr<Strategy> clone() const override {
    return std::make_unique<GreedyStrategy>(*this);
  }
  Lattice choose(const GameHistory& h, const StepContext& ctx) override;

 private:
  const GridField* u_;
  bool maximize_;
};

// Steps to the in-ball node closest to z (maximal step towards z).
class PullStrategy final : public Strategy {
 public:
  explicit PullStrategy(const Point& z) : z_(z) {}
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<PullStrategy>(*this); }
  Lattice choose(const GameHistory& h, const StepContext& ctx) override;

 private:
  Point z_;
};

// Steps to the in-ball node farthest from z. Adversary for point-reaching.
class FleeStrategy final : public Strategy {
 public:
  explicit FleeStrategy(const Point& z) : z_(z) {}
  std::unique_ptr<Strategy> clone() const override { return std::make_unique<FleeStrategy>(*this); }
  Lattice choose(const GameHistory& h, const StepContext& ctx) override;

 private:
  Point z_;
};

// Jumps straight to y when it is in reach, otherwise takes an eps/2-step
// towards it.
class HalfStepStrategy final : public Strategy {
 public:
  explicit HalfStepStrategy(const Lattice& y) : y_(y) {}
  std::unique_ptr<Strategy> clone() const override {
    return std::make_unique<HalfStepStrategy>(*this);
  }
  Lattice choose(const GameHistory& h, const StepContext& ctx) override;

 private:
  Lattice y_;
};

class StandStillStrategy final : public Strategy {
 public:
  std::unique_ptr<Strategy> clone() const override {
    return std::make_unique<StandStillStrategy>();
  }
  Lattice choose(const GameHistory& h, const StepContext&) override { return h.current(); }
};

// --- Cancellation machinery ----------------------------------------------

// Geometry of the Lipschitz-proof game: start points x and y at distance in
// [(m-1)eps, m eps), a target z equidistant from both at (m-1)eps, and a
// scale radius r. The grid realization keeps every quantity on the lattice;
// the canceller's m target steps are steered by the remaining displacement so
// that they sum to z - start exactly.
struct CancellationConfig {
  Lattice x = lat_zero();
  Lattice y = lat_zero();
  Lattice z = lat_zero();
  int m = 0;
  double r = 0.0;
};

// Picks m from |x - y| and snaps z onto the lattice. Requires dim >= 2 when
// x != y (no equidistant point exists on a line) and h small enough that m
// steered in-ball steps can cover (m-1)eps: h <= eps / (m (m + 1)).
CancellationConfig make_cancellation_config(const GridDomain& dom, const Lattice& x,
                                            const Lattice& y, double r);

enum class Role { PlayerI = 0, PlayerII = 1 };

// When winning the toss: negate the earliest uncancelled opponent move,
// otherwise take the next steered target step towards z. The ledger stores
// realized lattice vectors, so cancellation is exact.
class CancellationStrategy final : public Strategy {
 public:
  CancellationStrategy(const CancellationConfig& cfg, Role role);
  std::unique_ptr<Strategy> clone() const override {
    return std::make_unique<CancellationStrategy>(*this);
  }
  void observe(const GameHistory& h, const StepContext& ctx) override;
  Lattice choose(const GameHistory& h, const StepContext& ctx) override;

 private:
  CancellationConfig cfg_;
  Role role_;
  Lattice start_;
  std::deque<Lattice> uncancelled_;
  Lattice target_sum_ = lat_zero();
  int targets_done_ = 0;
  std::size_t cursor_ = 0;
  bool pending_cancel_ = false;
};

// Tags: "i" when the canceller is m net wins ahead, "ii" when the opponent
// is ceil(2r/eps) net wins ahead, "iii" when the random-move sum reaches 2r.
class CancellationStop final : public StoppingRule {
 public:
  CancellationStop(const CancellationConfig& cfg, Role canceller)
      : cfg_(cfg), canceller_(canceller) {}
  std::unique_ptr<StoppingRule> clone() const override {
    return std::make_unique<CancellationStop>(*this);
  }
  std::optional<std::string> check(const GameHistory& h, const StepContext& ctx) override;

 private:
  CancellationConfig cfg_;
  Role canceller_;
};

struct ConditionIEstimate {
  ProbEstimate prob;            // P(stop tag == "i")
  long tag_i_trials = 0;
  long ledger_failures = 0;     // tag-(i) trials where sum1+sum2 != z-start
  std::vector<Lattice> tag_i_terminals;
};

// Cancellation game from cfg start `start_role` against the given opponent
// strategy; estimates the probability of ending by condition (i) and checks
// the ledger identity on every such trial.
ConditionIEstimate estimate_condition_i_probability(const CancellationConfig& cfg,
                                                    Role canceller, const Strategy& opponent,
                                                    const StepContext& ctx,
                                                    const SimOptions& opt);

}  // namespace tow
