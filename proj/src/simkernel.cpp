#include "dcqe/simkernel.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "dcqe/errors.hpp"
#include "dcqe/rng.hpp"

namespace dcqe {

namespace {

// Stream ids under one unit seed. Routing is reproducible independently of
// how many draws generation consumed.
constexpr std::uint32_t kGenerationStream = 0;
constexpr std::uint32_t kRoutingStream = 1;

} // namespace

UnitTrace generate_pairs(const DerivedPlan &plan, const ExperimentConfig &config,
                         std::uint64_t seed) {
  if (!plan.ordering_ok()) throw OrderingNotValidatedError();

  UnitTrace trace;
  trace.seed = seed;
  if (config.p_pair <= 0.0) return trace; // degenerate rate: nothing is ever emitted

  const std::int64_t n_pulses = std::llround(plan.f_pump * config.t_phys);
  rng::Philox gen(seed, kGenerationStream);

  std::int64_t pulse = -1;
  while (true) {
    pulse += 1 + gen.geometric_skip(config.p_pair);
    if (pulse >= n_pulses) break;

    const int pairs = gen.truncated_poisson(config.p_pair);
    trace.counters.multi_pair_pulses += pairs >= 2 ? 1 : 0;
    const double time = double(pulse) / plan.f_pump;

    for (int j = 0; j < pairs; ++j) {
      PairEvent ev;
      ev.pulse_index = pulse;
      ev.time = time;
      ev.signal_collected = gen.bernoulli(config.p_s);
      ev.idler_collected = gen.bernoulli(config.p_i);
      const bool fid = gen.bernoulli(config.fidelity); // drawn for every pair: fixed consumption
      ev.fidelity_pass = ev.idler_collected && fid;
      ev.multi_pair = pairs >= 2;
      trace.counters.generated_pairs += 1;
      trace.counters.signal_collected += ev.signal_collected ? 1 : 0;
      trace.counters.idler_stored += ev.idler_collected ? 1 : 0;
      trace.events.push_back(ev);
    }
  }
  return trace;
}

UnitTrace assign_bins(UnitTrace trace, const DerivedPlan &plan, OccupancyPolicy policy) {
  trace.occupancy.clear();
  trace.counters.double_occupied_bins = 0;
  trace.counters.interference_capable = 0;

  // Events arrive in pulse order, so bin indices of stored idlers are
  // non-decreasing and the occupancy map builds with a single scan.
  for (PairEvent &ev : trace.events) {
    if (!ev.idler_collected) {
      ev.bin_index.reset();
      continue;
    }
    std::int64_t bin = std::int64_t(ev.time / plan.dt_bin);
    if (bin >= plan.mode_count) bin = plan.mode_count - 1;
    ev.bin_index = bin;
    if (!trace.occupancy.empty() && trace.occupancy.back().first == bin)
      trace.occupancy.back().second += 1;
    else
      trace.occupancy.emplace_back(bin, 1);
  }

  std::size_t occ_pos = 0;
  for (PairEvent &ev : trace.events) {
    if (ev.idler_collected) {
      while (trace.occupancy[occ_pos].first != *ev.bin_index) ++occ_pos;
      const bool shared = trace.occupancy[occ_pos].second >= 2;
      if (shared && policy == OccupancyPolicy::Discard) ev.fidelity_pass = false;
      ev.interference_capable = ev.signal_collected && ev.fidelity_pass &&
                                (policy == OccupancyPolicy::Ignore || !shared);
    } else {
      ev.interference_capable = false;
    }
    trace.counters.interference_capable += ev.interference_capable ? 1 : 0;
  }
  for (const auto &[bin, count] : trace.occupancy)
    trace.counters.double_occupied_bins += count >= 2 ? 1 : 0;

  trace.bins_assigned = true;
  return trace;
}

UnitResult route_detection(const UnitTrace &trace, HypothesisModel model, DelayedChoice choice,
                           std::uint64_t seed) {
  if (!trace.bins_assigned) throw BinsNotAssignedError();

  rng::Philox router(seed, kRoutingStream);
  const bool erasing =
      model == HypothesisModel::InformationalCoherence && choice == DelayedChoice::Erase;

  UnitResult result;
  result.model = model;
  result.choice = choice;
  result.seed = seed;
  result.total_signal_count = trace.counters.signal_collected;
  result.capable_count = trace.counters.interference_capable;

  for (const PairEvent &ev : trace.events) {
    if (!ev.signal_collected) continue;
    if (erasing && ev.interference_capable)
      result.monitored_count += 1; // clean erasure: the monitored port fires with certainty
    else
      result.monitored_count += router.bernoulli(0.5) ? 1 : 0;
  }
  return result;
}

UnitResult run_unit(const DerivedPlan &plan, const ExperimentConfig &config,
                    HypothesisModel model, DelayedChoice choice, std::uint64_t seed) {
  UnitTrace trace = assign_bins(generate_pairs(plan, config, seed), plan,
                                config.occupancy_policy);
  return route_detection(trace, model, choice, seed);
}

TraceCounters recount(const UnitTrace &trace) {
  TraceCounters c;
  std::int64_t last_multi_pulse = -1;
  for (const PairEvent &ev : trace.events) {
    c.generated_pairs += 1;
    c.signal_collected += ev.signal_collected ? 1 : 0;
    c.idler_stored += ev.idler_collected ? 1 : 0;
    c.interference_capable += ev.interference_capable ? 1 : 0;
    if (ev.multi_pair && ev.pulse_index != last_multi_pulse) {
      c.multi_pair_pulses += 1;
      last_multi_pulse = ev.pulse_index;
    }
  }
  for (const auto &[bin, count] : trace.occupancy)
    c.double_occupied_bins += count >= 2 ? 1 : 0;
  return c;
}

void write_trace_tsv_header(std::ostream &out) {
  out << "unit\tpulse_index\ttime\tsignal_collected\tidler_collected\tfidelity_pass"
         "\tmulti_pair\tbin_index\n";
}

void write_trace_tsv(std::ostream &out, const UnitTrace &trace, std::int64_t unit_index) {
  char buf[32];
  for (const PairEvent &ev : trace.events) {
    std::snprintf(buf, sizeof buf, "%.9g", ev.time);
    out << unit_index << '\t' << ev.pulse_index << '\t' << buf << '\t'
        << int(ev.signal_collected) << '\t' << int(ev.idler_collected) << '\t'
        << int(ev.fidelity_pass) << '\t' << int(ev.multi_pair) << '\t';
    if (ev.bin_index)
      out << *ev.bin_index;
    else
      out << '-';
    out << '\n';
  }
}

} // namespace dcqe
