#include "dcqe/campaign.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dcqe/errors.hpp"
#include "dcqe/rng.hpp"
#include "dcqe/simkernel.hpp"

namespace dcqe {

namespace {

std::string num(const char *format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::vector<UnitResult> run_units(const DerivedPlan &plan, const CampaignSpec &spec) {
  std::vector<UnitResult> results(std::size_t(spec.units));
  const auto worker_body = [&](std::atomic<std::int64_t> &next) {
    for (std::int64_t i = next.fetch_add(1); i < spec.units; i = next.fetch_add(1))
      results[std::size_t(i)] = run_unit(plan, spec.config, spec.model, spec.choice,
                                         rng::unit_seed(spec.master_seed, std::uint64_t(i)));
  };

  if (spec.mode == AggregationMode::Sequential) {
    for (std::int64_t i = 0; i < spec.units; ++i)
      results[std::size_t(i)] = run_unit(plan, spec.config, spec.model, spec.choice,
                                         rng::unit_seed(spec.master_seed, std::uint64_t(i)));
    return results;
  }

  const unsigned hw = std::thread::hardware_concurrency();
  const std::int64_t n_workers =
      std::min<std::int64_t>(spec.units, std::max<std::int64_t>(1, std::int64_t(hw)));
  std::atomic<std::int64_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(std::size_t(n_workers));
  for (std::int64_t w = 0; w < n_workers; ++w)
    workers.emplace_back([&] { worker_body(next); });
  for (std::thread &t : workers) t.join();
  return results;
}

} // namespace

CampaignReport run_campaign(const CampaignSpec &spec) {
  if (spec.units < 1) throw std::invalid_argument("run_campaign: require units >= 1");
  const auto start = std::chrono::steady_clock::now();

  CampaignReport report;
  report.config = spec.config;
  report.model = spec.model;
  report.choice = spec.choice;
  report.units = spec.units;
  report.master_seed = spec.master_seed;
  report.mode = spec.mode;
  report.alpha = spec.alpha;
  report.notes = spec.config_notes;
  report.plan = derive_plan(spec.config);
  report.ordering_passed = report.plan.ordering_ok();

  if (report.ordering_passed) {
    // Results land in an index-addressed vector, so scheduling cannot change
    // the aggregate in either mode.
    const std::vector<UnitResult> results = run_units(report.plan, spec);
    report.aggregate = aggregate_units(results, spec.mode);
    report.verdict = classify_regime(report.aggregate->total_monitored, spec.units, report.plan,
                                     spec.config, spec.alpha);
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string emit_report(const CampaignReport &report, ReportFormat format) {
  std::ostringstream out;

  if (format == ReportFormat::Machine) {
    out << "model=" << model_name(report.model) << " choice=" << choice_name(report.choice)
        << " units=" << report.units;
    if (report.verdict) {
      out << " observed_total=" << report.aggregate->total_monitored
          << " z_causal=" << num("%.9g", report.verdict->z_causal)
          << " z_ic=" << num("%.9g", report.verdict->z_ic)
          << " regime=" << regime_name(report.verdict->regime);
    } else {
      out << " observed_total=- z_causal=- z_ic=- regime=-";
    }
    out << " seed=" << report.master_seed << "\n";
    return out.str();
  }

  out << "campaign\n";
  out << "  model        = " << model_name(report.model) << "\n";
  out << "  choice       = " << choice_name(report.choice) << "\n";
  out << "  units        = " << report.units << "\n";
  out << "  master_seed  = " << report.master_seed << "\n";
  out << "  mode         = "
      << (report.mode == AggregationMode::Parallel ? "parallel" : "sequential") << "\n";
  out << "  alpha        = " << num("%.9g", report.alpha) << "\n";
  out << "plan\n";
  out << "  t_observe    = " << num("%.9g", report.plan.t_observe) << " s\n";
  out << "  t_choice     = " << num("%.9g", report.config.t_choice) << " s\n";
  out << "  t_delay      = " << num("%.9g", report.config.t_delay) << " s\n";
  out << "  t_end        = " << num("%.9g", report.plan.t_end) << " s\n";
  out << "  f_pump       = " << num("%.9g", report.plan.f_pump) << " Hz\n";
  out << "  mu0          = " << num("%.9g", report.plan.mu0) << "\n";
  out << "  mode_count   = " << report.plan.mode_count << "\n";
  out << "  dt_bin       = " << num("%.9g", report.plan.dt_bin) << " s\n";
  out << "  n_entangled  = " << num("%.9g", report.plan.n_entangled) << "\n";
  out << "validation\n";
  for (const auto &r : report.plan.validation) {
    out << "  " << r.check << ": "
        << (r.status == CheckStatus::Pass ? "pass"
                                          : r.status == CheckStatus::Fail ? "fail" : "warn");
    if (!r.code.empty()) out << " [" << r.code << "]";
    if (!r.detail.empty()) out << " (" << r.detail << ")";
    out << "\n";
  }
  for (const auto &n : report.notes) out << "  note: " << n << "\n";

  if (!report.ordering_passed) {
    out << "validation failed: choice timing violates the required ordering; "
           "no statistics were produced\n";
    return out.str();
  }

  const AggregateStats &agg = *report.aggregate;
  const RegimeVerdict &v = *report.verdict;
  out << "aggregate\n";
  out << "  total_monitored    = " << agg.total_monitored << "\n";
  out << "  total_signal       = " << agg.total_signal << "\n";
  out << "  empirical_mean     = " << num("%.9g", agg.empirical_mean) << "\n";
  out << "  empirical_variance = " << num("%.9g", agg.empirical_variance) << "\n";
  out << "verdict\n";
  out << "  regime       = " << regime_name(v.regime) << "\n";
  out << "  z_causal     = " << num("%.9g", v.z_causal) << "\n";
  out << "  z_ic         = " << num("%.9g", v.z_ic) << "\n";
  out << "  p_causal     = " << num("%.6g", v.p_causal) << "\n";
  out << "  p_ic         = " << num("%.6g", v.p_ic) << "\n";
  out << "  log_lr       = " << num("%.6g", v.log_lr) << "\n";
  out << "  alpha        = " << num("%.9g", v.alpha) << "\n";
  out << "  reading: " << regime_description(v.regime) << "\n";
  return out.str();
}

void write_report(const CampaignSpec &spec, const CampaignReport &report, ReportFormat format,
                  std::ostream &fallback) {
  const std::string text = emit_report(report, format);
  if (!spec.output_path) {
    fallback << text;
    if (!fallback) throw IoError("failed writing report to output stream");
    return;
  }
  std::ofstream file(*spec.output_path);
  if (!file) throw IoError("cannot open report sink: " + *spec.output_path);
  file << text;
  file.flush();
  if (!file) throw IoError("failed writing report to " + *spec.output_path);
}

void dump_traces(const CampaignSpec &spec, std::ostream &out) {
  const DerivedPlan plan = derive_plan(spec.config);
  if (!plan.ordering_ok()) throw OrderingNotValidatedError();
  write_trace_tsv_header(out);
  for (std::int64_t i = 0; i < spec.units; ++i) {
    const UnitTrace trace =
        assign_bins(generate_pairs(plan, spec.config, rng::unit_seed(spec.master_seed,
                                                                     std::uint64_t(i))),
                    plan, spec.config.occupancy_policy);
    write_trace_tsv(out, trace, i);
  }
  if (!out) throw IoError("failed writing trace dump");
}

} // namespace dcqe
