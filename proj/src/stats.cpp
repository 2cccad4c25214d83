#include "tow/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tow {

namespace {

double pairwise_sum_range(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_range(v, half) + pairwise_sum_range(v + half, n - half);
}

// Regularized lower incomplete gamma P(a, x), series + continued fraction.
double gamma_p(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p: bad arguments");
  if (x == 0.0) return 0.0;
  const double gln = std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - gln);
  }
  // Lentz continued fraction for Q(a, x)
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  const double q = std::exp(-x + a * std::log(x) - gln) * h;
  return 1.0 - q;
}

}  // namespace

double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum_range(v.data(), v.size());
}

ProbEstimate estimate_from_samples(const std::vector<double>& samples, std::uint64_t seed) {
  ProbEstimate e;
  e.trials = static_cast<long>(samples.size());
  e.seed = seed;
  if (samples.empty()) return e;
  e.mean = pairwise_sum(samples) / double(samples.size());
  if (samples.size() > 1) {
    std::vector<double> sq(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double d = samples[i] - e.mean;
      sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / double(samples.size() - 1);
    e.std_error = std::sqrt(var / double(samples.size()));
  }
  return e;
}

double chi_square_sf(double statistic, int dof) {
  if (dof <= 0) throw std::invalid_argument("chi_square_sf: dof must be positive");
  if (statistic <= 0.0) return 1.0;
  return 1.0 - gamma_p(0.5 * dof, 0.5 * statistic);
}

double chi_square_two_sample_pvalue(const std::vector<long>& a, const std::vector<long>& b,
                                    double min_expected) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("chi_square_two_sample: bins must align");
  // pool sparse bins left to right
  std::vector<double> pa, pb;
  double ca = 0.0, cb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ca += double(a[i]);
    cb += double(b[i]);
    if (ca + cb >= min_expected) {
      pa.push_back(ca);
      pb.push_back(cb);
      ca = cb = 0.0;
    }
  }
  if (ca + cb > 0.0) {
    if (pa.empty()) {
      pa.push_back(ca);
      pb.push_back(cb);
    } else {
      pa.back() += ca;
      pb.back() += cb;
    }
  }
  if (pa.size() < 2) return 1.0;
  const double na = pairwise_sum(pa), nb = pairwise_sum(pb);
  if (na == 0.0 || nb == 0.0) return 1.0;
  double stat = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    const double tot = pa[i] + pb[i];
    const double ea = tot * na / (na + nb);
    const double eb = tot * nb / (na + nb);
    if (ea > 0.0) stat += (pa[i] - ea) * (pa[i] - ea) / ea;
    if (eb > 0.0) stat += (pb[i] - eb) * (pb[i] - eb) / eb;
  }
  return chi_square_sf(stat, static_cast<int>(pa.size()) - 1);
}

double ks_two_sample_pvalue(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = double(a.size()), nb = double(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(double(i) / na - double(j) / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  const double lambda = (ne + 0.12 + 0.11 / ne) * d;
  // asymptotic Kolmogorov survival series
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2.0 * std::pow(-1.0, k - 1) * std::exp(-2.0 * k * k * lambda * lambda);
    p += term;
    if (std::abs(term) < 1e-12) break;
  }
  return std::clamp(p, 0.0, 1.0);
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("linear_fit: need at least two aligned points");
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("linear_fit: degenerate x values");
  LinearFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0;
  const double ybar = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double fit = f.intercept + f.slope * x[i];
    ss_res += (y[i] - fit) * (y[i] - fit);
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  f.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return f;
}

}  // namespace tow
