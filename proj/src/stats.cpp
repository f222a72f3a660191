#include "dcqe/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dcqe::stats {

namespace {

constexpr double kEps = 3.0e-16;
constexpr double kTiny = 1.0e-300;
constexpr int kMaxIter = 1000;

// Series expansion for P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * kEps)
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw std::runtime_error("gamma_p series did not converge");
}

// Lentz continued fraction for Q(a, x), valid for x >= a + 1.
double gamma_q_cf(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -double(i) * (double(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps)
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw std::runtime_error("gamma_q continued fraction did not converge");
}

} // namespace

double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_p: require a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_q: require a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi2_sf(double x, double dof) {
  if (dof <= 0.0) throw std::invalid_argument("chi2_sf: require dof > 0");
  if (x <= 0.0) return 1.0;
  return gamma_q(0.5 * dof, 0.5 * x);
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x * 0.7071067811865475244); }

double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("norm_quantile: require p in (0, 1)");

  // Work in the lower tail and reflect: erfc of a positive argument keeps full
  // relative precision there, while 1 - erfc(...) near p = 1 would not.
  // (1 - p is exact for p >= 0.5.)
  if (p > 0.5) return -norm_quantile(1.0 - p);

  // Rational initial estimate (Acklam), then two Halley corrections against
  // erfc bring the result to full double accuracy in both tails.
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double plow = 0.02425;

  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }

  constexpr double sqrt_two_pi = 2.5066282746310005024;
  for (int i = 0; i < 2; ++i) {
    const double e = 0.5 * std::erfc(-x * 0.7071067811865475244) - p;
    const double u = e * sqrt_two_pi * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double poisson_pmf(std::int64_t k, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("poisson_pmf: require lambda >= 0");
  if (k < 0) return 0.0;
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(double(k) * std::log(lambda) - lambda - std::lgamma(double(k) + 1.0));
}

double poisson_cdf(std::int64_t k, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("poisson_cdf: require lambda >= 0");
  if (k < 0) return 0.0;
  if (lambda == 0.0) return 1.0;
  return gamma_q(double(k) + 1.0, lambda);
}

double poisson_sf(std::int64_t k, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("poisson_sf: require lambda >= 0");
  if (k <= 0) return 1.0;
  if (lambda == 0.0) return 0.0;
  return gamma_p(double(k), lambda);
}

double poisson_two_sided_p(std::int64_t k, double lambda) {
  const double lo = poisson_cdf(k, lambda);
  const double hi = poisson_sf(k, lambda);
  return std::min(1.0, 2.0 * std::min(lo, hi));
}

namespace {

struct Cell {
  double obs = 0.0;
  double exp = 0.0;
};

GofResult pearson(const std::vector<Cell> &cells) {
  if (cells.size() < 2) return {0.0, 0, 1.0};
  double chi2 = 0.0;
  for (const Cell &c : cells) {
    const double diff = c.obs - c.exp;
    chi2 += diff * diff / c.exp;
  }
  const int dof = int(cells.size()) - 1;
  return {chi2, dof, chi2_sf(chi2, double(dof))};
}

} // namespace

GofResult poisson_gof(const std::vector<std::int64_t> &histogram, double lambda,
                      std::int64_t n, double min_expected) {
  if (n <= 0) throw std::invalid_argument("poisson_gof: require n > 0");
  std::vector<Cell> cells;
  Cell cur;
  for (std::size_t k = 0; k < histogram.size(); ++k) {
    cur.obs += double(histogram[k]);
    cur.exp += double(n) * poisson_pmf(std::int64_t(k), lambda);
    if (cur.exp >= min_expected) {
      cells.push_back(cur);
      cur = Cell{};
    }
  }
  // Open upper tail beyond the histogram support.
  cur.exp += double(n) * poisson_sf(std::int64_t(histogram.size()), lambda);
  if (cur.exp >= min_expected || cells.empty()) {
    cells.push_back(cur);
  } else {
    cells.back().obs += cur.obs;
    cells.back().exp += cur.exp;
  }
  return pearson(cells);
}

GofResult two_sample_chi2(const std::vector<std::int64_t> &a,
                          const std::vector<std::int64_t> &b, double min_pooled) {
  const std::size_t len = std::max(a.size(), b.size());
  std::vector<Cell> cells;
  Cell cur;
  for (std::size_t k = 0; k < len; ++k) {
    cur.obs += k < a.size() ? double(a[k]) : 0.0; // sample A
    cur.exp += k < b.size() ? double(b[k]) : 0.0; // sample B
    if (cur.obs + cur.exp >= min_pooled) {
      cells.push_back(cur);
      cur = Cell{};
    }
  }
  if (cur.obs + cur.exp > 0.0) {
    if (cells.empty())
      cells.push_back(cur);
    else {
      cells.back().obs += cur.obs;
      cells.back().exp += cur.exp;
    }
  }
  if (cells.size() < 2) return {0.0, 0, 1.0};
  // Equal sample sizes: chi2 = sum (A - B)^2 / (A + B).
  double chi2 = 0.0;
  for (const Cell &c : cells) {
    const double diff = c.obs - c.exp;
    chi2 += diff * diff / (c.obs + c.exp);
  }
  const int dof = int(cells.size()) - 1;
  return {chi2, dof, chi2_sf(chi2, double(dof))};
}

} // namespace dcqe::stats
