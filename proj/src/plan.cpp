#include "dcqe/plan.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "dcqe/errors.hpp"

namespace dcqe {

namespace {

void require(bool ok, const char *field, const char *what) {
  if (!ok) throw InvalidConfigError(std::string(field) + ": " + what);
}

std::string fmt(const char *format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

const char *status_word(CheckStatus s) {
  switch (s) {
  case CheckStatus::Pass: return "pass";
  case CheckStatus::Fail: return "fail";
  default: return "warn";
  }
}

} // namespace

void validate_config(const ExperimentConfig &c) {
  require(c.p_s > 0.0 && c.p_s <= 1.0, "p_s", "probability must be in (0, 1]");
  require(c.p_i > 0.0 && c.p_i <= 1.0, "p_i", "probability must be in (0, 1]");
  require(c.p_pair > 0.0 && c.p_pair <= 1.0, "p_pair", "probability must be in (0, 1]");
  require(c.fidelity >= 0.0 && c.fidelity <= 1.0, "fidelity", "must be in [0, 1]");
  require(c.t_phys > 0.0, "t_phys", "duration must be positive");
  require(c.t_delay > 0.0, "t_delay", "duration must be positive");
  require(c.t_choice > 0.0, "t_choice", "time must be positive");
  require(c.coherence_time > 0.0, "coherence_time", "duration must be positive");
  require(c.readout_time > 0.0, "readout_time", "duration must be positive");
  require(c.epsilon > 0.0, "epsilon", "margin must be positive");
  require(c.n_signal >= 1, "n_signal", "count must be at least 1");
  require(c.modes_per_photon >= 1, "modes_per_photon", "count must be at least 1");
  require(c.coherence_window_factor > 0.0, "coherence_window_factor", "must be positive");
  require(c.multi_pair_threshold > 0.0, "multi_pair_threshold", "must be positive");
  require(c.t_phys < c.t_delay, "t_phys",
          "must be smaller than t_delay or no valid choice timing exists");
}

DerivedPlan derive_plan(const ExperimentConfig &config) {
  validate_config(config);

  DerivedPlan plan;
  plan.t_observe = (1.0 + config.epsilon) * config.t_phys;
  plan.f_pump = double(config.n_signal) / (config.t_phys * config.p_pair * config.p_s);
  plan.mu0 = plan.f_pump * config.p_pair * config.t_phys;
  plan.mode_count = config.modes_per_photon * config.n_signal;
  plan.dt_bin = config.t_phys / double(plan.mode_count);
  plan.n_entangled = plan.mu0 * config.p_s * config.p_i;
  plan.t_end = config.t_delay + config.readout_time;

  for (const auto &report :
       {validate_ordering(plan, config), check_single_photon_regime(plan, config),
        check_hardware_bounds(plan, config)})
    plan.validation.insert(plan.validation.end(), report.records.begin(), report.records.end());
  return plan;
}

ValidationReport validate_ordering(const DerivedPlan &plan, const ExperimentConfig &config) {
  ValidationReport report;

  ValidationRecord lower{"choice_after_observation", CheckStatus::Pass, "", ""};
  if (plan.t_observe < config.t_choice) {
    lower.detail = fmt("t_observe = %.9g s", plan.t_observe) +
                   fmt(" < t_choice = %.9g s", config.t_choice);
  } else {
    lower.status = CheckStatus::Fail;
    lower.code = kWheelersConditionViolated;
    lower.detail = fmt("t_choice = %.9g s does not strictly exceed ", config.t_choice) +
                   fmt("t_observe = %.9g s", plan.t_observe);
  }
  report.records.push_back(lower);

  ValidationRecord upper{"choice_before_expiry", CheckStatus::Pass, "", ""};
  if (config.t_choice < config.t_delay) {
    upper.detail = fmt("t_choice = %.9g s", config.t_choice) +
                   fmt(" < t_delay = %.9g s", config.t_delay);
  } else {
    upper.status = CheckStatus::Fail;
    upper.code = kChoiceAfterMemoryExpiry;
    upper.detail = fmt("t_choice = %.9g s is not strictly before ", config.t_choice) +
                   fmt("t_delay = %.9g s", config.t_delay);
  }
  report.records.push_back(upper);
  return report;
}

ValidationReport check_single_photon_regime(const DerivedPlan &plan,
                                            const ExperimentConfig &config) {
  ValidationReport report;

  const double spacing = 1.0 / (plan.f_pump * config.p_pair * config.p_s);
  const double floor = config.coherence_window_factor * config.coherence_time;
  ValidationRecord coherence{"coherence_spacing", CheckStatus::Pass, "", ""};
  if (spacing >= floor) {
    coherence.detail = fmt("mean signal spacing %.4g s", spacing) +
                       fmt(" >= required %.4g s", floor);
  } else {
    coherence.status = CheckStatus::Fail;
    coherence.code = kCoherenceOverlap;
    coherence.detail = fmt("mean signal spacing %.4g s", spacing) +
                       fmt(" below required %.4g s; coherence windows overlap", floor);
  }
  report.records.push_back(coherence);

  const double p2 = config.p_pair * config.p_pair;
  ValidationRecord multi{"multi_pair_rate", CheckStatus::Pass, "", ""};
  if (p2 <= config.multi_pair_threshold) {
    multi.detail = fmt("p_pair^2 = %.4g", p2) +
                   fmt(" <= threshold %.4g", config.multi_pair_threshold);
  } else {
    multi.status = CheckStatus::Fail;
    multi.code = kMultiPairRegime;
    multi.detail = fmt("p_pair^2 = %.4g", p2) +
                   fmt(" exceeds threshold %.4g; multi-pair emission not negligible",
                       config.multi_pair_threshold);
  }
  report.records.push_back(multi);
  return report;
}

ValidationReport check_hardware_bounds(const DerivedPlan &plan, const ExperimentConfig &config) {
  // Demonstrated memory capabilities used as sanity bounds, not hard limits.
  constexpr double kBinFloorSeconds = 10e-9;
  constexpr std::int64_t kModeCeiling = 10000;
  constexpr double kDelayCeilingSeconds = 1e-3;

  ValidationReport report;
  if (plan.dt_bin < kBinFloorSeconds)
    report.records.push_back({"hardware_bounds", CheckStatus::Warn, kBinBelowHardwareFloor,
                              fmt("dt_bin = %.4g s under the 10 ns demonstrated floor",
                                  plan.dt_bin)});
  if (plan.mode_count > kModeCeiling)
    report.records.push_back({"hardware_bounds", CheckStatus::Warn, kModeCountAboveDemonstrated,
                              "mode_count = " + std::to_string(plan.mode_count) +
                                  " above the ~1e3-1e4 demonstrated range"});
  if (config.t_delay > kDelayCeilingSeconds)
    report.records.push_back({"hardware_bounds", CheckStatus::Warn, kDelayBeyondDemonstrated,
                              fmt("t_delay = %.4g s beyond the demonstrated 1 ms storage",
                                  config.t_delay)});
  if (report.records.empty())
    report.records.push_back(
        {"hardware_bounds", CheckStatus::Pass, "", "within demonstrated capability"});
  return report;
}

std::string plan_report(const DerivedPlan &plan, const ExperimentConfig &config,
                        const std::vector<std::string> &notes) {
  std::ostringstream out;
  out << "t_observe   = " << fmt("%.9g", plan.t_observe) << " s\n";
  out << "f_pump      = " << fmt("%.9g", plan.f_pump) << " Hz\n";
  out << "mu0         = " << fmt("%.9g", plan.mu0) << "\n";
  out << "mode_count  = " << plan.mode_count << "\n";
  out << "dt_bin      = " << fmt("%.9g", plan.dt_bin) << " s\n";
  out << "n_entangled = " << fmt("%.9g", plan.n_entangled) << "\n";
  out << "t_end       = " << fmt("%.9g", plan.t_end) << " s\n";
  out << "t_choice    = " << fmt("%.9g", config.t_choice) << " s\n";
  out << "validation:\n";
  for (const auto &r : plan.validation) {
    out << "  " << r.check << ": " << status_word(r.status);
    if (!r.code.empty()) out << " [" << r.code << "]";
    if (!r.detail.empty()) out << " (" << r.detail << ")";
    out << "\n";
  }
  for (const auto &n : notes) out << "note: " << n << "\n";
  return out.str();
}

} // namespace dcqe
