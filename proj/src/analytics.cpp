#include "dcqe/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dcqe/errors.hpp"
#include "dcqe/stats.hpp"

namespace dcqe {

namespace {

// Above this expected count the plain normal z-score decides consistency;
// below it the exact Poisson tail does.
constexpr double kNormalSwitch = 100.0;

// Signed z equivalent of the two-sided consistency test of `observed` against
// Poisson(lambda). On the exact branch the value is the quantile that makes
// |z| > z(alpha) coincide with exact-p < alpha.
double consistency_z(double observed, double lambda) {
  if (lambda > kNormalSwitch) return (observed - lambda) / std::sqrt(lambda);
  const double p2 = stats::poisson_two_sided_p(std::llround(observed), lambda);
  if (p2 >= 1.0) return 0.0;
  const double z = stats::norm_quantile(1.0 - 0.5 * p2);
  return observed >= lambda ? z : -z;
}

// Diagnostic two-sided tail probability: exact below the switch, continuity
// corrected normal above it.
double diagnostic_p(double observed, double lambda) {
  if (lambda <= kNormalSwitch) return stats::poisson_two_sided_p(std::llround(observed), lambda);
  const double shifted = std::max(0.0, std::fabs(observed - lambda) - 0.5);
  return std::min(1.0, 2.0 * stats::norm_cdf(-shifted / std::sqrt(lambda)));
}

bool mutually_excluded_exact(double lambda_a, double lambda_b, double significance) {
  return stats::poisson_two_sided_p(std::llround(lambda_a), lambda_b) < significance &&
         stats::poisson_two_sided_p(std::llround(lambda_b), lambda_a) < significance;
}

} // namespace

const char *regime_name(Regime r) {
  switch (r) {
  case Regime::CausalIndependence: return "CausalIndependence";
  case Regime::NeitherModel: return "NeitherModel";
  case Regime::ChoiceDependence: return "ChoiceDependence";
  default: return "Inconclusive";
  }
}

const char *regime_description(Regime r) {
  switch (r) {
  case Regime::CausalIndependence:
    return "counts agree with the choice-independent prediction and rule out the "
           "erasure-sensitive one";
  case Regime::NeitherModel:
    return "counts are inconsistent with both reference predictions";
  case Regime::ChoiceDependence:
    return "counts agree with the erasure-sensitive prediction and rule out the "
           "choice-independent one";
  default:
    return "counts are consistent with both reference predictions; more units needed";
  }
}

Moments analytic_moments(const DerivedPlan &plan, const ExperimentConfig &config,
                         HypothesisModel model, DelayedChoice choice) {
  Moments m;
  m.model = model;
  m.choice = choice;
  const double base = plan.mu0 * config.p_s / 2.0;
  if (model == HypothesisModel::InformationalCoherence && choice == DelayedChoice::Erase)
    m.mean = base * (1.0 + config.p_i * config.fidelity);
  else
    m.mean = base;
  m.sigma = std::sqrt(m.mean);
  return m;
}

RegimeVerdict classify_regime(std::int64_t observed_total, std::int64_t units,
                              const DerivedPlan &plan, const ExperimentConfig &config,
                              double alpha) {
  if (units < 1) throw std::invalid_argument("classify_regime: require units >= 1");
  if (observed_total < 0) throw std::invalid_argument("classify_regime: require observed >= 0");
  if (!(alpha > 0.0 && alpha < 0.5))
    throw std::invalid_argument("classify_regime: require alpha in (0, 0.5)");

  const Moments causal = analytic_moments(plan, config, HypothesisModel::CausalityPreserving,
                                          DelayedChoice::Erase);
  const Moments coherent = analytic_moments(plan, config, HypothesisModel::InformationalCoherence,
                                            DelayedChoice::Erase);
  if (coherent.mean == causal.mean) throw DegeneratePredictionsError();

  const double lambda_c = double(units) * causal.mean;
  const double lambda_ic = double(units) * coherent.mean;
  const double obs = double(observed_total);

  RegimeVerdict v;
  v.alpha = alpha;
  v.units = units;
  v.z_causal = consistency_z(obs, lambda_c);
  v.z_ic = consistency_z(obs, lambda_ic);
  v.p_causal = diagnostic_p(obs, lambda_c);
  v.p_ic = diagnostic_p(obs, lambda_ic);
  v.log_lr = obs * std::log(lambda_ic / lambda_c) - (lambda_ic - lambda_c);

  const double z_alpha = stats::norm_quantile(1.0 - 0.5 * alpha);
  const bool fits_causal = std::fabs(v.z_causal) <= z_alpha;
  const bool fits_ic = std::fabs(v.z_ic) <= z_alpha;
  if (fits_causal && fits_ic)
    v.regime = Regime::Inconclusive;
  else if (fits_causal)
    v.regime = Regime::CausalIndependence;
  else if (fits_ic)
    v.regime = Regime::ChoiceDependence;
  else
    v.regime = Regime::NeitherModel;
  return v;
}

std::int64_t power_analysis(const DerivedPlan &plan, const ExperimentConfig &config,
                            double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 0.5) || !(beta > 0.0 && beta < 0.5))
    throw std::invalid_argument("power_analysis: require alpha, beta in (0, 0.5)");

  const double mu_c =
      analytic_moments(plan, config, HypothesisModel::CausalityPreserving, DelayedChoice::Erase)
          .mean;
  const double mu_ic =
      analytic_moments(plan, config, HypothesisModel::InformationalCoherence, DelayedChoice::Erase)
          .mean;
  if (mu_c == mu_ic) throw DegeneratePredictionsError();

  const double significance = std::max(alpha, beta);
  const double z_alpha = stats::norm_quantile(1.0 - 0.5 * significance);

  // The normal closed form locates the scan start; the exact-tail evaluation
  // is the decision everywhere, so the approximation can never mis-size M.
  const double gap = std::fabs(mu_ic - mu_c);
  const double guess = z_alpha * z_alpha * std::max(mu_c, mu_ic) / (gap * gap);
  std::int64_t m = std::max<std::int64_t>(1, std::int64_t(guess) - 4);
  while (m > 1 &&
         mutually_excluded_exact(double(m - 1) * mu_c, double(m - 1) * mu_ic, significance))
    --m;
  constexpr std::int64_t kScanCap = 100000000;
  while (m <= kScanCap) {
    if (mutually_excluded_exact(double(m) * mu_c, double(m) * mu_ic, significance)) return m;
    ++m;
  }
  throw std::runtime_error("power_analysis: unit requirement exceeds scan cap");
}

AggregateStats aggregate_units(const std::vector<UnitResult> &results, AggregationMode mode) {
  if (results.empty()) throw EmptyCampaignError();

  const HypothesisModel model = results.front().model;
  const DelayedChoice choice = results.front().choice;
  for (const UnitResult &r : results)
    if (r.model != model || r.choice != choice)
      throw MixedProvenanceError("unit results mix models or choices; refusing to pool them");

  AggregateStats agg;
  agg.units = std::int64_t(results.size());
  agg.model = model;
  agg.choice = choice;
  agg.mode = mode;

  // Canonical order: sort by seed. Distinct units of a campaign always carry
  // distinct seeds, so the output is independent of input permutation.
  std::vector<const UnitResult *> ordered;
  ordered.reserve(results.size());
  for (const UnitResult &r : results) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(), [](const UnitResult *a, const UnitResult *b) {
    if (a->seed != b->seed) return a->seed < b->seed;
    return a->monitored_count < b->monitored_count;
  });

  long double sum = 0, sum_sq = 0;
  agg.per_unit_monitored.reserve(results.size());
  for (const UnitResult *r : ordered) {
    agg.per_unit_monitored.push_back(r->monitored_count);
    agg.total_monitored += r->monitored_count;
    agg.total_signal += r->total_signal_count;
    sum += r->monitored_count;
    sum_sq += (long double)(r->monitored_count) * r->monitored_count;
  }
  const long double n = (long double)(agg.units);
  agg.empirical_mean = double(sum / n);
  agg.empirical_variance = agg.units > 1 ? double((sum_sq - sum * sum / n) / (n - 1)) : 0.0;
  return agg;
}

} // namespace dcqe
