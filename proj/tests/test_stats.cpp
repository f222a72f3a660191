#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dcqe/rng.hpp"
#include "dcqe/stats.hpp"

using namespace dcqe;

namespace {

// Independent tail oracle: log-space pmf summation, no incomplete gamma.
double brute_poisson_cdf(std::int64_t k, double lambda) {
  if (k < 0) return 0.0;
  double max_log = -1e300;
  std::vector<double> logs;
  logs.reserve(std::size_t(k) + 1);
  for (std::int64_t i = 0; i <= k; ++i) {
    const double lp = double(i) * std::log(lambda) - lambda - std::lgamma(double(i) + 1.0);
    logs.push_back(lp);
    max_log = std::max(max_log, lp);
  }
  double sum = 0;
  for (const double lp : logs) sum += std::exp(lp - max_log);
  return std::exp(max_log) * sum;
}

} // namespace

TEST_SUITE("stats") {

TEST_CASE("chi-square survival matches pinned references") {
  CHECK(stats::chi2_sf(10.0, 5.0) == doctest::Approx(7.523524614651e-02).epsilon(1e-10));
  CHECK(stats::chi2_sf(23.2, 10.0) == doctest::Approx(1.003193838242e-02).epsilon(1e-10));
  CHECK(stats::chi2_sf(3.0, 2.0) == doctest::Approx(2.231301601484e-01).epsilon(1e-10));
  CHECK(stats::chi2_sf(30.5778, 17.0) == doctest::Approx(2.246679967769e-02).epsilon(1e-10));
  CHECK(stats::chi2_sf(1.5, 4.0) == doctest::Approx(8.266414672968e-01).epsilon(1e-10));
  CHECK(stats::chi2_sf(100.0, 80.0) == doctest::Approx(6.457036892113e-02).epsilon(1e-10));
  CHECK(stats::chi2_sf(0.0, 3.0) == 1.0);
}

TEST_CASE("normal quantile matches pinned references") {
  CHECK(stats::norm_quantile(0.9985) == doctest::Approx(2.967737925342).epsilon(1e-11));
  CHECK(stats::norm_quantile(0.975) == doctest::Approx(1.959963984540).epsilon(1e-11));
  CHECK(stats::norm_quantile(0.9999999995) == doctest::Approx(6.109410191663).epsilon(1e-11));
  CHECK(stats::norm_quantile(0.01) == doctest::Approx(-2.326347874041).epsilon(1e-11));
  CHECK(std::fabs(stats::norm_quantile(0.5000001) - 2.50663e-7) < 1e-12);
  CHECK(stats::norm_quantile(0.5) == doctest::Approx(0.0));
  CHECK_THROWS_AS(stats::norm_quantile(0.0), std::invalid_argument);
  CHECK_THROWS_AS(stats::norm_quantile(1.0), std::invalid_argument);
}

TEST_CASE("normal cdf matches pinned references and inverts the quantile") {
  CHECK(stats::norm_cdf(1.0) == doctest::Approx(8.413447460685429e-01).epsilon(1e-14));
  CHECK(stats::norm_cdf(-2.5) == doctest::Approx(6.209665325776132e-03).epsilon(1e-14));
  CHECK(stats::norm_cdf(4.743416490252569) ==
        doctest::Approx(9.999989492820220e-01).epsilon(1e-14));
  for (const double p : {0.001, 0.02425, 0.3, 0.5, 0.77, 0.97575, 0.9999, 0.999999999})
    CHECK(stats::norm_cdf(stats::norm_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
}

TEST_CASE("incomplete gamma halves sum to one") {
  for (const double a : {0.5, 1.0, 3.0, 10.0, 250.0, 976.0})
    for (const double x : {0.1, 1.0, 9.5, 250.0, 975.0})
      CHECK(stats::gamma_p(a, x) + stats::gamma_q(a, x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("poisson pmf matches pinned references") {
  CHECK(stats::poisson_pmf(0, 6.0) == doctest::Approx(2.478752176666358e-03).epsilon(1e-12));
  CHECK(stats::poisson_pmf(6, 6.0) == doctest::Approx(1.606231410479801e-01).epsilon(1e-12));
  CHECK(stats::poisson_pmf(17, 6.0) == doctest::Approx(1.179602949896931e-04).epsilon(1e-12));
  CHECK(stats::poisson_pmf(2, 0.3) == doctest::Approx(3.333681993067730e-02).epsilon(1e-12));
  CHECK(stats::poisson_pmf(0, 0.01) == doctest::Approx(9.900498337491680e-01).epsilon(1e-12));
  CHECK(stats::poisson_pmf(250, 250.0) == doctest::Approx(2.522291618452578e-02).epsilon(1e-12));
  CHECK(stats::poisson_pmf(-1, 5.0) == 0.0);
}

TEST_CASE("poisson tails match pinned references") {
  CHECK(stats::poisson_cdf(50, 60.0) == doctest::Approx(0.10767787862197316).epsilon(1e-12));
  CHECK(stats::poisson_sf(75, 60.0) == doctest::Approx(0.0340746510843233).epsilon(1e-12));
  CHECK(stats::poisson_sf(286, 250.0) == doctest::Approx(0.013716).epsilon(1e-3));
  CHECK(stats::poisson_cdf(285, 325.0) == doctest::Approx(0.012926).epsilon(1e-3));
  CHECK(stats::poisson_cdf(-1, 5.0) == 0.0);
  CHECK(stats::poisson_sf(0, 5.0) == 1.0);
}

TEST_CASE("library tails agree with brute-force pmf summation") {
  const std::pair<std::int64_t, double> cases[] = {
      {50, 60.0}, {250, 250.0}, {285, 325.0}, {500, 650.0}, {750, 975.0}, {5, 3.0}};
  for (const auto &[k, lambda] : cases) {
    const double brute = brute_poisson_cdf(k, lambda);
    CHECK(stats::poisson_cdf(k, lambda) == doctest::Approx(brute).epsilon(1e-9));
    const double brute_sf = 1.0 - brute_poisson_cdf(k - 1, lambda);
    CHECK(stats::poisson_sf(k, lambda) == doctest::Approx(brute_sf).epsilon(1e-9));
  }
}

TEST_CASE("two sided tail is capped and symmetric at the mean") {
  CHECK(stats::poisson_two_sided_p(250, 250.0) <= 1.0);
  CHECK(stats::poisson_two_sided_p(250, 250.0) > 0.9);
  const double low = stats::poisson_two_sided_p(200, 250.0);
  const double high = stats::poisson_two_sided_p(300, 250.0);
  CHECK(low < 0.01);
  CHECK(high < 0.01);
}

TEST_CASE("goodness of fit accepts true poisson samples and rejects shifted ones") {
  rng::Philox g(777, 3);
  const double lambda = 6.0;
  const int n = 100000;

  // Inversion sampling against the exact cdf keeps this test self-contained.
  std::vector<std::int64_t> hist(40, 0);
  for (int i = 0; i < n; ++i) {
    const double u = g.uniform();
    std::int64_t k = 0;
    double term = std::exp(-lambda);
    double cum = term;
    while (u >= cum && k < 39) {
      ++k;
      term *= lambda / double(k);
      cum += term;
    }
    hist[std::size_t(k)] += 1;
  }

  const stats::GofResult fit = stats::poisson_gof(hist, lambda, n);
  CHECK(fit.dof > 5);
  CHECK(fit.p_value > 0.01);

  const stats::GofResult misfit = stats::poisson_gof(hist, lambda * 1.05, n);
  CHECK(misfit.p_value < 1e-6);
}

TEST_CASE("two sample chi-square accepts identical laws and rejects different ones") {
  rng::Philox g(888, 4);
  const int n = 20000;
  auto sample = [&](double lambda) {
    std::vector<std::int64_t> hist(40, 0);
    for (int i = 0; i < n; ++i) {
      const double u = g.uniform();
      std::int64_t k = 0;
      double term = std::exp(-lambda);
      double cum = term;
      while (u >= cum && k < 39) {
        ++k;
        term *= lambda / double(k);
        cum += term;
      }
      hist[std::size_t(k)] += 1;
    }
    return hist;
  };

  const auto a = sample(8.0);
  const auto b = sample(8.0);
  const auto c = sample(9.0);
  CHECK(stats::two_sample_chi2(a, b).p_value > 0.01);
  CHECK(stats::two_sample_chi2(a, c).p_value < 1e-6);
}

} // TEST_SUITE
