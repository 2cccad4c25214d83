#include "tow/walk.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tow/common.hpp"

namespace tow {

LineWalkSpec::LineWalkSpec(double t0_, double eps_) : t0(t0_), eps(eps_) {
  if (!(t0 > 0.0 && t0 < 1.0)) throw std::invalid_argument("line walk: requires t0 in (0,1)");
  if (!(eps > 0.0 && eps < 0.25)) throw std::invalid_argument("line walk: requires eps < 1/4");
}

namespace {

// smallest integer k with t0 - k*eps <= 0, robust to t0/eps being integral
int steps_to_floor(double t0, double eps) {
  return static_cast<int>(std::ceil(t0 / eps - 1e-9));
}

// Solves the symmetric-walk recurrence val_j = rhs + (val_{j-1}+val_{j+1})/2
// on interior lattice states with fixed end values (Thomas algorithm).
std::vector<double> solve_tridiagonal_walk(int count, double left_value, double right_value,
                                           double rhs) {
  // system: -0.5 v_{j-1} + v_j - 0.5 v_{j+1} = rhs
  std::vector<double> cp(count, 0.0), dp(count, 0.0);
  for (int i = 0; i < count; ++i) {
    double rhs_i = rhs;
    if (i == 0) rhs_i += 0.5 * left_value;
    if (i == count - 1) rhs_i += 0.5 * right_value;
    const double a = (i == 0) ? 0.0 : -0.5;
    const double b = 1.0;
    const double cc = (i == count - 1) ? 0.0 : -0.5;
    const double denom = b - a * ((i == 0) ? 0.0 : cp[i - 1]);
    cp[i] = cc / denom;
    dp[i] = (rhs_i - a * ((i == 0) ? 0.0 : dp[i - 1])) / denom;
  }
  std::vector<double> v(count, 0.0);
  for (int i = count - 1; i >= 0; --i)
    v[i] = dp[i] - cp[i] * ((i == count - 1) ? 0.0 : v[i + 1]);
  return v;
}

}  // namespace

LineWalkResult line_walk_exact(const LineWalkSpec& spec) {
  const int a = steps_to_floor(spec.t0, spec.eps);            // left absorbing at j = -a
  const int b = steps_to_floor(1.0 - spec.t0, spec.eps);      // right absorbing at j = +b
  const int interior = a + b - 1;                             // j = -a+1 .. b-1
  LineWalkResult res;
  if (interior <= 0) {
    // start adjacent to both barriers
    res.p_left = 0.5;
    res.expected_stop = 1.0;
    return res;
  }
  const auto p = solve_tridiagonal_walk(interior, 1.0, 0.0, 0.0);
  const auto m = solve_tridiagonal_walk(interior, 0.0, 0.0, 1.0);
  const int start = a - 1;  // index of j = 0 within the interior range
  res.p_left = p[start];
  res.expected_stop = m[start];
  return res;
}

HoeffdingCheck hoeffding_bound_check(int n, double b, long N, double lambda, long trials,
                                     std::uint64_t seed) {
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("hoeffding: bad dimension");
  if (!(b > 0.0) || !(lambda > 0.0) || N < 1 || trials < 1)
    throw std::invalid_argument("hoeffding: bad arguments");
  std::vector<double> hits(static_cast<std::size_t>(trials));
  parallel_for_chunks(hits.size(), 0, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t t = lo; t < hi; ++t) {
      Rng rng = Rng::for_trial(seed, t);
      Point s = pt_zero();
      double hit = 0.0;
      for (long m = 0; m < N; ++m) {
        s = pt_add(s, rng.uniform_ball(n, b));
        if (pt_norm(s, n) >= lambda) {
          hit = 1.0;
          break;
        }
      }
      hits[t] = hit;
    }
  });
  HoeffdingCheck out;
  out.empirical = estimate_from_samples(hits, seed);
  out.bound = 4.0 * n * std::exp(-lambda * lambda / (2.0 * double(N) * b * b));
  out.within_bound = out.empirical.mean <= out.bound + 3.0 * out.empirical.std_error;
  return out;
}

CylinderSpec::CylinderSpec(double r_, double t_, double eps_, int n_)
    : r(r_), t(t_), eps(eps_), n(n_) {
  if (!(r > 0.0)) throw std::invalid_argument("cylinder: requires r > 0");
  if (!(t >= 0.0 && t <= 2.0 * r)) throw std::invalid_argument("cylinder: requires t in [0, 2r]");
  if (!(eps > 0.0 && eps < r)) throw std::invalid_argument("cylinder: requires 0 < eps < r");
  if (n < 1 || n > kMaxDim) throw std::invalid_argument("cylinder: bad horizontal dimension");
}

namespace {

// vertical height from the integer step count, no accumulated FP drift
inline double height(const CylinderSpec& s, long k) { return s.t + double(k) * s.eps; }

inline int vertical_exit(const CylinderSpec& s, long k) {
  const double t = height(s, k);
  if (t <= 1e-12 * s.eps) return -1;                 // bottom
  if (t >= 2.0 * s.r - 1e-12 * s.eps) return +1;     // top
  return 0;
}

}  // namespace

CylinderSample cylinder_walk_sample(const CylinderSpec& spec, const GameParams& params, Rng& rng,
                                    long step_cap) {
  CylinderSample out;
  long k = 0;
  Point x = pt_zero();
  while (true) {
    const int ve = vertical_exit(spec, k);
    if (ve != 0) {
      out.outcome = ve < 0 ? CylinderOutcome::Bottom : CylinderOutcome::Top;
      return out;
    }
    if (pt_norm(x, spec.n) >= 2.0 * spec.r) {
      out.outcome = CylinderOutcome::Side;
      return out;
    }
    if (out.steps >= step_cap) {
      out.capped = true;
      out.outcome = CylinderOutcome::Side;
      return out;
    }
    const double u = rng.uniform();
    if (u < 0.5 * params.alpha) {
      --k;
    } else if (u < params.alpha) {
      ++k;
    } else {
      x = pt_add(x, rng.uniform_ball(spec.n, spec.eps));
    }
    ++out.steps;
  }
}

CylinderSample decomposed_walk_sample(const CylinderSpec& spec, const GameParams& params,
                                      Rng& vertical_rng, Rng& horizontal_rng, Rng& coin_rng,
                                      long step_cap) {
  CylinderSample out;
  long k = 0;  // vertical walk position index (t~ at index U_j)
  Point x = pt_zero();
  while (true) {
    const int ve = vertical_exit(spec, k);
    if (ve != 0) {
      out.outcome = ve < 0 ? CylinderOutcome::Bottom : CylinderOutcome::Top;
      return out;
    }
    if (pt_norm(x, spec.n) >= 2.0 * spec.r) {
      out.outcome = CylinderOutcome::Side;
      return out;
    }
    if (out.steps >= step_cap) {
      out.capped = true;
      out.outcome = CylinderOutcome::Side;
      return out;
    }
    if (coin_rng.bernoulli(params.alpha)) {
      // Z_m = 1: consume the next vertical-walk increment
      k += vertical_rng.bernoulli(0.5) ? 1 : -1;
    } else {
      // Z_m = 0: consume the next horizontal-walk increment
      x = pt_add(x, horizontal_rng.uniform_ball(spec.n, spec.eps));
    }
    ++out.steps;
  }
}

CylinderEstimate estimate_cylinder(const CylinderSpec& spec, const GameParams& params, long trials,
                                   std::uint64_t seed, bool decomposed, int threads) {
  std::vector<std::uint8_t> tags(static_cast<std::size_t>(trials));
  parallel_for_chunks(tags.size(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t t = lo; t < hi; ++t) {
      CylinderSample s;
      if (decomposed) {
        Rng rv = Rng::for_trial(seed, 3 * t);
        Rng rh = Rng::for_trial(seed, 3 * t + 1);
        Rng rc = Rng::for_trial(seed, 3 * t + 2);
        s = decomposed_walk_sample(spec, params, rv, rh, rc);
      } else {
        Rng rng = Rng::for_trial(seed, t);
        s = cylinder_walk_sample(spec, params, rng);
      }
      tags[t] = static_cast<std::uint8_t>(s.outcome);
    }
  });
  CylinderEstimate out;
  std::vector<double> bottom(tags.size()), top(tags.size()), side(tags.size());
  for (std::size_t i = 0; i < tags.size(); ++i) {
    ++out.counts[tags[i]];
    bottom[i] = tags[i] == 0 ? 1.0 : 0.0;
    top[i] = tags[i] == 1 ? 1.0 : 0.0;
    side[i] = tags[i] == 2 ? 1.0 : 0.0;
  }
  out.p_bottom = estimate_from_samples(bottom, seed);
  out.p_top = estimate_from_samples(top, seed);
  out.p_side = estimate_from_samples(side, seed);
  return out;
}

}  // namespace tow
