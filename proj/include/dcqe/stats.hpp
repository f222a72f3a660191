#pragma once
#include <cstdint>
#include <vector>

// Deterministic statistical kernels. Everything here is hand-rolled from
// standard numerics (incomplete gamma, rational normal quantile) so the same
// inputs give the same bits on every platform; tests pin reference values.

namespace dcqe::stats {

/// Standard normal CDF.
double norm_cdf(double x);

/// Inverse standard normal CDF on (0, 1). Accurate to ~1e-13 after
/// refinement; throws std::invalid_argument outside the open interval.
double norm_quantile(double p);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);

/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Chi-square survival function: P(X > x) for dof degrees of freedom.
double chi2_sf(double x, double dof);

double poisson_pmf(std::int64_t k, double lambda);

/// P(X <= k) for X ~ Poisson(lambda).
double poisson_cdf(std::int64_t k, double lambda);

/// P(X >= k) for X ~ Poisson(lambda).
double poisson_sf(std::int64_t k, double lambda);

/// Two-sided tail probability 2 * min(P(X <= k), P(X >= k)), capped at 1.
double poisson_two_sided_p(std::int64_t k, double lambda);

struct GofResult {
  double chi2;
  int dof;
  double p_value;
};

/// Pearson goodness-of-fit of a value-indexed histogram (histogram[k] = number
/// of samples equal to k) against Poisson(lambda), n samples total. Adjacent
/// cells are pooled until each pooled cell has expected count >= min_expected;
/// the open upper tail is one cell.
GofResult poisson_gof(const std::vector<std::int64_t> &histogram, double lambda,
                      std::int64_t n, double min_expected = 5.0);

/// Two-sample homogeneity chi-square for equal-size samples, on value-indexed
/// histograms. Cells pooled until combined count >= min_pooled.
GofResult two_sample_chi2(const std::vector<std::int64_t> &a,
                          const std::vector<std::int64_t> &b, double min_pooled = 10.0);

} // namespace dcqe::stats
