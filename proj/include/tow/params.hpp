#pragma once

#include <stdexcept>

namespace tow {

// Exponent p > 2, dimension n and step radius eps fix the whole game:
// the coin bias (alpha, beta) and the move/noise ball radius.
struct GameParams {
  double p = 0.0;
  int n = 0;
  double eps = 0.0;
  double alpha = 0.0;  // (p - 2) / (n + p)
  double beta = 0.0;   // (n + 2) / (n + p)
};

// Throws std::invalid_argument when p <= 2, n < 1 or eps <= 0.
GameParams make_params(double p, int n, double eps);

}  // namespace tow
