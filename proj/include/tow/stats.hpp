#pragma once

#include <cstdint>
#include <vector>

namespace tow {

// Monte Carlo estimate with provenance. Identical (seed, config) pairs give
// bit-identical estimates: per-trial results are reduced by pairwise
// summation in trial order, independent of thread scheduling.
struct ProbEstimate {
  long trials = 0;
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t seed = 0;
  long capped = 0;  // trials that hit the step cap
};

// Order-stable pairwise sum.
double pairwise_sum(const std::vector<double>& v);

ProbEstimate estimate_from_samples(const std::vector<double>& samples, std::uint64_t seed);

// Upper tail of the chi-square distribution with k degrees of freedom,
// via the regularized incomplete gamma function.
double chi_square_sf(double statistic, int dof);

// Two-sample chi-square homogeneity test on aligned count vectors (bins with
// fewer than `min_expected` combined counts are pooled). Returns the p-value.
double chi_square_two_sample_pvalue(const std::vector<long>& a, const std::vector<long>& b,
                                    double min_expected = 5.0);

// Two-sample Kolmogorov-Smirnov test, asymptotic p-value.
double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace tow
