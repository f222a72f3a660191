#pragma once
#include <cstdint>

namespace dcqe {

/// What happens to stored idlers that share a temporal bin.
///   Discard: shared-bin idlers lose erasure capability (their which-path
///            record cannot be cleanly erased); their signals still produce
///            coin-flip detection trials. Conservative default.
///   Ignore:  bin sharing is tolerated and capability is kept. Useful for
///            matching the closed-form detection laws, which assume clean
///            one-idler-per-bin storage.
enum class OccupancyPolicy { Discard, Ignore };

/// All free parameters of the protocol. Defaults describe the reference
/// configuration used throughout the tests.
struct ExperimentConfig {
  double t_phys = 400e-6;   ///< signal acquisition window, seconds
  double epsilon = 0.1;     ///< observation safety margin, dimensionless
  double t_choice = 450e-6; ///< start of the collective idler operation, seconds
  double t_delay = 500e-6;  ///< memory storage guarantee, seconds

  std::int64_t n_signal = 500; ///< target collected signal photons per unit
  double p_s = 0.3;            ///< signal collection efficiency
  double p_i = 0.3;            ///< idler collection efficiency
  double p_pair = 0.01;        ///< per-pulse pair-generation probability

  /// Entanglement fidelity surviving storage. Range [0, 1]; zero is legal and
  /// means storage destroys erasure capability entirely (the two detection
  /// models then coincide). The default 1.0 is an assumption, not a measured
  /// value, and reports flag it when it was not supplied explicitly.
  double fidelity = 1.0;

  std::int64_t modes_per_photon = 3; ///< temporal modes reserved per stored photon

  /// Signal-photon coherence time, seconds. The 1 ps default is a placeholder;
  /// supply a measured value for any real planning claim.
  double coherence_time = 1e-12;

  double readout_time = 10e-6; ///< idler readout duration, seconds

  // Tunable validation thresholds and the bin-overlap policy.
  double coherence_window_factor = 100.0; ///< required spacing / coherence_time ratio
  double multi_pair_threshold = 1e-3;     ///< max tolerated p_pair^2
  OccupancyPolicy occupancy_policy = OccupancyPolicy::Discard;
};

/// Throws InvalidConfigError naming the offending field. Collection and pair
/// probabilities must lie in (0, 1]; fidelity may be 0 (fully decohered
/// storage is a meaningful setting); durations and the margin must be
/// positive; counts at least 1; and t_phys < t_delay, without which no valid
/// choice-timing ordering can exist.
void validate_config(const ExperimentConfig &config);

} // namespace dcqe
