#include "tow/dpp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace tow {

namespace {

void check_input(const GridField& u, const GameParams& params) {
  if (!u.domain) throw std::invalid_argument("dpp: field has no domain");
  if (u.domain->dim() != params.n)
    throw std::invalid_argument("dpp: params dimension does not match domain");
  if (std::abs(u.domain->eps() - params.eps) > 1e-12 * params.eps)
    throw std::invalid_argument("dpp: params eps does not match domain eps");
}

// T(u) at interior nodes of `src`, written into `dst`.
void apply_into(const GridField& src, const GameParams& params, GridField& dst, int threads) {
  const GridDomain& dom = *src.domain;
  const auto& st = dom.stencil_data();
  const std::size_t w = dom.stencil_width();
  const double half_alpha = 0.5 * params.alpha;
  const double beta_over = params.beta / double(w);
  parallel_for_chunks(dom.node_count(), threads, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      if (!dom.is_interior(i)) {
        dst.values[i] = src.values[i];
        continue;
      }
      const std::uint32_t* row = st.data() + i * w;
      double mn = std::numeric_limits<double>::infinity();
      double mx = -mn;
      double sum = 0.0;
      for (std::size_t k = 0; k < w; ++k) {
        const double v = src.values[row[k]];
        mn = std::min(mn, v);
        mx = std::max(mx, v);
        sum += v;
      }
      dst.values[i] = half_alpha * (mn + mx) + beta_over * sum;
    }
  });
}

double sup_diff_interior(const GridField& a, const GridField& b, int threads) {
  const GridDomain& dom = *a.domain;
  std::atomic<double> result{0.0};
  parallel_for_chunks(dom.node_count(), threads, [&](std::size_t lo, std::size_t hi) {
    double m = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      if (!dom.is_interior(i)) continue;
      m = std::max(m, std::abs(a.values[i] - b.values[i]));
    }
    double cur = result.load();
    while (m > cur && !result.compare_exchange_weak(cur, m)) {
    }
  });
  return result.load();
}

}  // namespace

GridField dpp_apply(const GridField& u, const GameParams& params, int threads) {
  check_input(u, params);
  GridField out(*u.domain);
  apply_into(u, params, out, threads);
  return out;
}

double dpp_residual(const GridField& u, const GameParams& params, int threads) {
  GridField t = dpp_apply(u, params, threads);
  return sup_diff_interior(t, u, threads);
}

SolveReport solve_dpp_from(const GridDomain& domain, const GridField& boundary,
                           const GridField& initial, const GameParams& params, double tolerance,
                           long max_iters, int threads) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("solve_dpp: tolerance must be positive");
  check_input(boundary, params);
  for (double v : boundary.values)
    if (!std::isfinite(v)) throw std::invalid_argument("solve_dpp: non-finite boundary data");

  GridField u(domain);
  for (std::size_t i = 0; i < domain.node_count(); ++i)
    u.values[i] = domain.is_interior(i) ? initial.values[i] : boundary.values[i];

  GridField next(domain);
  SolveReport rep;
  rep.tolerance = tolerance;
  double res = std::numeric_limits<double>::infinity();
  for (long it = 0; it < max_iters; ++it) {
    apply_into(u, params, next, threads);
    res = sup_diff_interior(next, u, threads);
    std::swap(u.values, next.values);
    rep.iterations = it + 1;
    if (res <= tolerance) {
      rep.converged = true;
      break;
    }
  }
  rep.final_residual = res;
  rep.solution = std::move(u);
  return rep;
}

SolveReport solve_dpp(const GridDomain& domain, const GridField& boundary,
                      const GameParams& params, double tolerance, long max_iters, int threads) {
  // initial guess: extend the boundary data by its strip mean
  double mean = 0.0;
  std::size_t cnt = 0;
  for (std::size_t i = 0; i < domain.node_count(); ++i) {
    if (!domain.is_interior(i)) {
      mean += boundary.values[i];
      ++cnt;
    }
  }
  if (cnt == 0) throw std::invalid_argument("solve_dpp: domain has no boundary strip");
  mean /= double(cnt);
  GridField init(domain, mean);
  return solve_dpp_from(domain, boundary, init, params, tolerance, max_iters, threads);
}

}  // namespace tow
