#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "dcqe/config.hpp"

namespace dcqe {

enum class CheckStatus { Pass, Fail, Warn };

/// One named validation check outcome. `code` is a stable machine-readable
/// failure/warning identifier, empty on pass.
struct ValidationRecord {
  std::string check;
  CheckStatus status = CheckStatus::Pass;
  std::string code;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationRecord> records;
  bool passed() const {
    for (const auto &r : records)
      if (r.status == CheckStatus::Fail) return false;
    return true;
  }
};

// Stable identifiers used in ValidationRecord::code.
inline constexpr const char *kWheelersConditionViolated = "WheelersConditionViolated";
inline constexpr const char *kChoiceAfterMemoryExpiry = "ChoiceAfterMemoryExpiry";
inline constexpr const char *kCoherenceOverlap = "CoherenceOverlap";
inline constexpr const char *kMultiPairRegime = "MultiPairRegime";
inline constexpr const char *kBinBelowHardwareFloor = "BinBelowHardwareFloor";
inline constexpr const char *kModeCountAboveDemonstrated = "ModeCountAboveDemonstrated";
inline constexpr const char *kDelayBeyondDemonstrated = "DelayBeyondDemonstrated";

/// Quantities derived from a configuration by closed forms, plus the outcome
/// of every validation check. Construction guarantees, to double precision:
///   dt_bin * mode_count == t_phys
///   f_pump * p_pair * p_s * t_phys == n_signal
///   t_observe == (1 + epsilon) * t_phys
struct DerivedPlan {
  double t_observe = 0;         ///< end of the padded observation window, seconds
  double f_pump = 0;            ///< required pump repetition rate, Hz
  double mu0 = 0;               ///< mean generated pairs per unit
  std::int64_t mode_count = 0;  ///< required memory temporal modes
  double dt_bin = 0;            ///< temporal-bin resolution, seconds
  double n_entangled = 0;       ///< mean jointly collected pairs per unit
  double t_end = 0;             ///< unit closure time, seconds
  std::vector<ValidationRecord> validation;

  /// True when the strict ordering t_observe < t_choice < t_delay held.
  bool ordering_ok() const {
    for (const auto &r : validation)
      if (r.status == CheckStatus::Fail &&
          (r.code == kWheelersConditionViolated || r.code == kChoiceAfterMemoryExpiry))
        return false;
    return true;
  }
};

/// Compute all derived quantities and run every validation check.
/// Throws InvalidConfigError if the config violates its invariants.
DerivedPlan derive_plan(const ExperimentConfig &config);

/// Strict ordering t_observe < t_choice < t_delay; one record per inequality.
/// Failure is a report outcome, never an exception.
ValidationReport validate_ordering(const DerivedPlan &plan, const ExperimentConfig &config);

/// Single-photon operating regime: mean signal spacing must exceed
/// coherence_window_factor * coherence_time, and p_pair^2 must stay below
/// multi_pair_threshold. One record per condition.
ValidationReport check_single_photon_regime(const DerivedPlan &plan,
                                            const ExperimentConfig &config);

/// Warnings (never failures) when the plan asks more of the memory hardware
/// than has been demonstrated: bins under 10 ns, more than 1e4 modes, or
/// storage beyond 1 ms.
ValidationReport check_hardware_bounds(const DerivedPlan &plan, const ExperimentConfig &config);

/// Key-value report of the plan and its validation outcomes, for stdout.
/// `notes` lines (e.g. which config keys fell back to defaults) are appended.
std::string plan_report(const DerivedPlan &plan, const ExperimentConfig &config,
                        const std::vector<std::string> &notes = {});

} // namespace dcqe
