#pragma once
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace dcqe {

/// Which detection law governs the final coupler.
enum class HypothesisModel { CausalityPreserving, InformationalCoherence };

/// The operation applied to the stored idlers after signal acquisition ends.
enum class DelayedChoice { Erase, Preserve };

/// One generated pair with its full thinning record.
/// Invariants: fidelity_pass implies idler_collected; bin_index is present
/// iff idler_collected; 0 <= time < t_phys.
struct PairEvent {
  std::int64_t pulse_index = 0;
  double time = 0;              ///< emission time, pulse_index / f_pump
  bool signal_collected = false;
  bool idler_collected = false;
  bool fidelity_pass = false;   ///< meaningful only when idler_collected
  bool multi_pair = false;      ///< generating pulse produced >= 2 pairs
  /// Set by assign_bins: signal and idler collected, fidelity kept, and the
  /// bin not shared (under the Discard policy). Routing keys off this flag.
  bool interference_capable = false;
  std::optional<std::int64_t> bin_index;
};

struct TraceCounters {
  std::int64_t generated_pairs = 0;
  std::int64_t signal_collected = 0;
  std::int64_t idler_stored = 0;
  std::int64_t interference_capable = 0;
  std::int64_t double_occupied_bins = 0;
  std::int64_t multi_pair_pulses = 0;
};

/// Full seeded stochastic record of one operational unit. Counters are always
/// recomputable from the event list; `occupancy` maps bin index to stored
/// idler count, sorted by bin.
struct UnitTrace {
  std::uint64_t seed = 0;
  std::vector<PairEvent> events;
  std::vector<std::pair<std::int64_t, std::int64_t>> occupancy;
  TraceCounters counters;
  bool bins_assigned = false;
};

/// Marginal detection counts of one unit at the monitored port.
/// Invariant: 0 <= monitored_count <= total_signal_count.
struct UnitResult {
  std::int64_t monitored_count = 0;
  std::int64_t total_signal_count = 0;
  std::int64_t capable_count = 0;
  HypothesisModel model = HypothesisModel::CausalityPreserving;
  DelayedChoice choice = DelayedChoice::Erase;
  std::uint64_t seed = 0;
};

inline const char *model_name(HypothesisModel m) {
  return m == HypothesisModel::CausalityPreserving ? "causal" : "ic";
}

inline const char *choice_name(DelayedChoice c) {
  return c == DelayedChoice::Erase ? "erase" : "preserve";
}

} // namespace dcqe
