#pragma once
#include <cstdint>
#include <iosfwd>

#include "dcqe/config.hpp"
#include "dcqe/plan.hpp"
#include "dcqe/trace.hpp"

namespace dcqe {

/// Generate one unit's pair events with all thinning flags, bins unassigned.
///
/// Per pulse the pair count is Poisson(p_pair), realised sparsely: a geometric
/// skip jumps over inactive pulses and an active pulse draws a zero-truncated
/// Poisson count, which is the same law at a fraction of the draws. Each pair
/// is independently thinned by Bernoulli(p_s), Bernoulli(p_i) and
/// Bernoulli(fidelity). Identical seeds give identical traces.
///
/// Throws OrderingNotValidatedError when the plan's choice-timing ordering
/// check failed. A non-positive p_pair (unreachable through a validated
/// config but legal here) yields an empty trace.
UnitTrace generate_pairs(const DerivedPlan &plan, const ExperimentConfig &config,
                         std::uint64_t seed);

/// Populate bin_index = floor(time / dt_bin) for every stored idler, fill the
/// occupancy map, and apply the bin-sharing policy: under Discard, events in a
/// bin holding >= 2 idlers lose fidelity_pass. Also finalises the per-event
/// interference_capable flag and the capability / double-occupancy counters.
UnitTrace assign_bins(UnitTrace trace, const DerivedPlan &plan,
                      OccupancyPolicy policy = OccupancyPolicy::Discard);

/// Route every signal-collected event through the final coupler. Under the
/// causality-preserving model, or whenever the choice is Preserve, each trial
/// lands in the monitored port with probability 1/2. Under informational
/// coherence with Erase, interference-capable events land with probability 1
/// (no randomness consumed) and the rest with probability 1/2.
/// Throws BinsNotAssignedError if assign_bins has not run.
UnitResult route_detection(const UnitTrace &trace, HypothesisModel model, DelayedChoice choice,
                           std::uint64_t seed);

/// generate_pairs + assign_bins (policy from config) + route_detection, with
/// generation and routing on separate streams of the same seed.
UnitResult run_unit(const DerivedPlan &plan, const ExperimentConfig &config,
                    HypothesisModel model, DelayedChoice choice, std::uint64_t seed);

/// Recompute counters from the event list; used to check trace consistency.
TraceCounters recount(const UnitTrace &trace);

/// Tab-separated dump, one line per event:
/// unit pulse_index time signal idler fidelity multi_pair bin ("-" when absent).
void write_trace_tsv(std::ostream &out, const UnitTrace &trace, std::int64_t unit_index);

/// Column header line matching write_trace_tsv.
void write_trace_tsv_header(std::ostream &out);

} // namespace dcqe
