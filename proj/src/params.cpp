#include "tow/params.hpp"

#include <cmath>
#include <string>

namespace tow {

GameParams make_params(double p, int n, double eps) {
  if (!(p > 2.0) || !std::isfinite(p))
    throw std::invalid_argument("make_params: requires p > 2, got p = " + std::to_string(p));
  if (n < 1) throw std::invalid_argument("make_params: requires n >= 1");
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw std::invalid_argument("make_params: requires eps > 0");
  GameParams g;
  g.p = p;
  g.n = n;
  g.eps = eps;
  g.alpha = (p - 2.0) / (n + p);
  g.beta = (n + 2.0) / (n + p);
  return g;
}

}  // namespace tow
