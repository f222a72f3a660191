#pragma once
#include <cstdint>
#include <vector>

#include "dcqe/config.hpp"
#include "dcqe/plan.hpp"
#include "dcqe/trace.hpp"

namespace dcqe {

/// Closed-form per-unit detection moments. Poisson: sigma = sqrt(mean).
struct Moments {
  double mean = 0;
  double sigma = 0;
  HypothesisModel model = HypothesisModel::CausalityPreserving;
  DelayedChoice choice = DelayedChoice::Erase;
};

enum class Regime { CausalIndependence, NeitherModel, ChoiceDependence, Inconclusive };

const char *regime_name(Regime r);

/// Sentence describing what a regime means for the experiment.
const char *regime_description(Regime r);

/// Classification of an aggregated count against both model predictions.
/// The regime follows from the z-scores alone:
///   CausalIndependence: |z_causal| <= z(alpha) and |z_ic| >  z(alpha)
///   ChoiceDependence:   |z_ic|     <= z(alpha) and |z_causal| > z(alpha)
///   NeitherModel: both exceed z(alpha); Inconclusive: both within.
/// On the exact-tail branch (expected count <= 100) the z value reported is
/// the normal quantile equivalent of the exact two-sided tail, so the same
/// threshold comparison remains valid.
struct RegimeVerdict {
  Regime regime = Regime::Inconclusive;
  double z_causal = 0;
  double z_ic = 0;
  double alpha = 0;
  std::int64_t units = 0;
  double p_causal = 1; ///< diagnostic two-sided tail probability vs the causal law
  double p_ic = 1;     ///< diagnostic two-sided tail probability vs the coherence law
  double log_lr = 0;   ///< diagnostic log likelihood ratio, coherence over causal
};

/// Per-unit monitored-port moments under a model and choice.
/// Causal, or any model with Preserve: mean = mu0 * p_s / 2.
/// Informational coherence with Erase: mean = mu0 * p_s * (1 + p_i * F) / 2.
Moments analytic_moments(const DerivedPlan &plan, const ExperimentConfig &config,
                         HypothesisModel model, DelayedChoice choice);

/// Classify a total monitored count aggregated over `units` units. Each model
/// is tested two-sided against Poisson(units * mean): a plain z-score when the
/// expected count exceeds 100, the exact Poisson tail otherwise.
/// Throws DegeneratePredictionsError when the two predictions coincide
/// (fidelity = 0) and std::invalid_argument on domain violations.
RegimeVerdict classify_regime(std::int64_t observed_total, std::int64_t units,
                              const DerivedPlan &plan, const ExperimentConfig &config,
                              double alpha);

/// Smallest number of units M such that each model's predicted total, read as
/// an observation, is rejected two-sided by the other model at significance
/// max(alpha, beta). Scanned with the normal approximation and confirmed by
/// exact Poisson tails; the exact evaluation is authoritative.
/// Throws DegeneratePredictionsError when the predictions coincide.
std::int64_t power_analysis(const DerivedPlan &plan, const ExperimentConfig &config,
                            double alpha, double beta);

/// Label recording how a campaign's units were executed. Aggregation output
/// is identical either way; the two schemes differ only in scheduling.
enum class AggregationMode { Parallel, Sequential };

/// Totals and empirical moments of a set of unit results. per_unit_monitored
/// is sorted by unit seed, which makes the whole structure invariant under
/// permutation of the input list.
struct AggregateStats {
  std::int64_t units = 0;
  std::int64_t total_monitored = 0;
  std::int64_t total_signal = 0;
  std::vector<std::int64_t> per_unit_monitored;
  double empirical_mean = 0;
  double empirical_variance = 0; ///< sample variance; 0 for a single unit
  HypothesisModel model = HypothesisModel::CausalityPreserving;
  DelayedChoice choice = DelayedChoice::Erase;
  AggregationMode mode = AggregationMode::Parallel;
};

/// Throws EmptyCampaignError on an empty list and MixedProvenanceError when
/// results disagree on their model or choice.
AggregateStats aggregate_units(const std::vector<UnitResult> &results, AggregationMode mode);

} // namespace dcqe
