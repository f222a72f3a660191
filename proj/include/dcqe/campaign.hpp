#pragma once
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dcqe/analytics.hpp"
#include "dcqe/config.hpp"
#include "dcqe/plan.hpp"
#include "dcqe/trace.hpp"

namespace dcqe {

/// Everything needed to reproduce a campaign bit for bit. Unit i runs on
/// rng::unit_seed(master_seed, i) in either execution mode.
struct CampaignSpec {
  ExperimentConfig config;
  HypothesisModel model = HypothesisModel::CausalityPreserving;
  DelayedChoice choice = DelayedChoice::Erase;
  std::int64_t units = 1000;
  std::uint64_t master_seed = 0;
  AggregationMode mode = AggregationMode::Parallel;
  double alpha = 0.003;
  std::optional<std::string> output_path;   ///< report sink; stdout when absent
  std::vector<std::string> config_notes;    ///< provenance notes (defaulted keys)
};

/// Complete result of a campaign. When the choice-timing ordering fails the
/// campaign is gated: aggregate and verdict stay empty and no statistics
/// exist anywhere in the report. wall_seconds is runtime metadata and never
/// appears in serialized output.
struct CampaignReport {
  ExperimentConfig config;
  DerivedPlan plan;
  HypothesisModel model = HypothesisModel::CausalityPreserving;
  DelayedChoice choice = DelayedChoice::Erase;
  std::int64_t units = 0;
  std::uint64_t master_seed = 0;
  AggregationMode mode = AggregationMode::Parallel;
  double alpha = 0.003;
  bool ordering_passed = false;
  std::optional<AggregateStats> aggregate;
  std::optional<RegimeVerdict> verdict;
  std::vector<std::string> notes;
  double wall_seconds = 0;
};

enum class ReportFormat { Human, Machine };

/// Derive and validate the plan, then simulate `units` units on seeds derived
/// from master_seed, aggregate them in unit order, and classify the total.
/// Refuses to simulate when the ordering check fails (gated report instead).
/// Parallel and Sequential modes produce identical numbers by construction.
/// Throws InvalidConfigError and propagates analytics errors.
CampaignReport run_campaign(const CampaignSpec &spec);

/// Serialize a report. Byte-stable: identical reports give identical bytes.
/// Machine format is a single line of eight space-separated key=value fields:
/// model choice units observed_total z_causal z_ic regime seed
/// ("-" fills statistics fields of a gated report).
std::string emit_report(const CampaignReport &report, ReportFormat format);

/// Write emit_report output to `spec.output_path`, or to `fallback` when unset.
/// Throws IoError when the sink cannot be written.
void write_report(const CampaignSpec &spec, const CampaignReport &report, ReportFormat format,
                  std::ostream &fallback);

/// Regenerate every unit trace of the campaign deterministically and stream
/// them as TSV. Works because traces are pure functions of (config, seed).
void dump_traces(const CampaignSpec &spec, std::ostream &out);

} // namespace dcqe
