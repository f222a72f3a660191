#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dcqe/analytics.hpp"
#include "dcqe/campaign.hpp"
#include "dcqe/config_io.hpp"
#include "dcqe/errors.hpp"
#include "dcqe/plan.hpp"
#include "dcqe/simkernel.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitConfigError = 2;

dcqe::LoadedConfig load(const std::string &config_path) {
  if (config_path.empty()) return dcqe::load_config("");
  return dcqe::load_config_file(config_path);
}

dcqe::HypothesisModel parse_model(const std::string &name) {
  return name == "ic" ? dcqe::HypothesisModel::InformationalCoherence
                      : dcqe::HypothesisModel::CausalityPreserving;
}

dcqe::DelayedChoice parse_choice(const std::string &name) {
  return name == "preserve" ? dcqe::DelayedChoice::Preserve : dcqe::DelayedChoice::Erase;
}

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

int run_plan(const std::string &config_path) {
  const dcqe::LoadedConfig loaded = load(config_path);
  const dcqe::DerivedPlan plan = dcqe::derive_plan(loaded.config);
  std::cout << dcqe::plan_report(plan, loaded.config, dcqe::default_notes(loaded));
  for (const auto &r : plan.validation)
    if (r.status == dcqe::CheckStatus::Fail) return kExitValidationFailure;
  return kExitOk;
}

int run_simulate(const std::string &config_path, const std::string &model,
                 const std::string &choice, std::int64_t units, std::uint64_t seed,
                 const std::string &mode, double alpha, const std::string &format,
                 const std::string &dump_path, const std::string &output_path) {
  const dcqe::LoadedConfig loaded = load(config_path);

  dcqe::CampaignSpec spec;
  spec.config = loaded.config;
  spec.model = parse_model(model);
  spec.choice = parse_choice(choice);
  spec.units = units;
  spec.master_seed = seed;
  spec.mode = mode == "sequential" ? dcqe::AggregationMode::Sequential
                                   : dcqe::AggregationMode::Parallel;
  spec.alpha = alpha;
  spec.config_notes = dcqe::default_notes(loaded);
  if (!output_path.empty()) spec.output_path = output_path;

  const dcqe::CampaignReport report = dcqe::run_campaign(spec);
  dcqe::write_report(spec, report,
                     format == "machine" ? dcqe::ReportFormat::Machine
                                         : dcqe::ReportFormat::Human,
                     std::cout);
  std::cerr << "wall_seconds = " << fmt9(report.wall_seconds) << "\n";

  if (!report.ordering_passed) return kExitValidationFailure;

  if (!dump_path.empty()) {
    std::ofstream dump(dump_path);
    if (!dump) throw dcqe::IoError("cannot open trace sink: " + dump_path);
    dcqe::dump_traces(spec, dump);
  }
  return kExitOk;
}

int run_analyze(const std::string &config_path, std::int64_t observed, std::int64_t units,
                double alpha, const std::string &format) {
  const dcqe::LoadedConfig loaded = load(config_path);
  const dcqe::DerivedPlan plan = dcqe::derive_plan(loaded.config);
  const dcqe::RegimeVerdict v =
      dcqe::classify_regime(observed, units, plan, loaded.config, alpha);

  if (format == "machine") {
    std::cout << "model=- choice=- units=" << units << " observed_total=" << observed
              << " z_causal=" << fmt9(v.z_causal) << " z_ic=" << fmt9(v.z_ic)
              << " regime=" << dcqe::regime_name(v.regime) << " seed=-\n";
    return kExitOk;
  }
  std::cout << "analysis\n";
  std::cout << "  observed     = " << observed << "\n";
  std::cout << "  units        = " << units << "\n";
  std::cout << "  alpha        = " << fmt9(alpha) << "\n";
  std::cout << "  regime       = " << dcqe::regime_name(v.regime) << "\n";
  std::cout << "  z_causal     = " << fmt9(v.z_causal) << "\n";
  std::cout << "  z_ic         = " << fmt9(v.z_ic) << "\n";
  std::cout << "  p_causal     = " << fmt9(v.p_causal) << "\n";
  std::cout << "  p_ic         = " << fmt9(v.p_ic) << "\n";
  std::cout << "  log_lr       = " << fmt9(v.log_lr) << "\n";
  std::cout << "  reading: " << dcqe::regime_description(v.regime) << "\n";
  for (const auto &n : dcqe::default_notes(loaded)) std::cout << "  note: " << n << "\n";
  return kExitOk;
}

int run_power(const std::string &config_path, double alpha, double beta) {
  const dcqe::LoadedConfig loaded = load(config_path);
  const dcqe::DerivedPlan plan = dcqe::derive_plan(loaded.config);
  const auto causal = dcqe::analytic_moments(plan, loaded.config,
                                             dcqe::HypothesisModel::CausalityPreserving,
                                             dcqe::DelayedChoice::Erase);
  const auto coherent = dcqe::analytic_moments(plan, loaded.config,
                                               dcqe::HypothesisModel::InformationalCoherence,
                                               dcqe::DelayedChoice::Erase);
  const std::int64_t required = dcqe::power_analysis(plan, loaded.config, alpha, beta);
  std::cout << "mean_causal    = " << fmt9(causal.mean) << "\n";
  std::cout << "mean_coherent  = " << fmt9(coherent.mean) << "\n";
  std::cout << "alpha          = " << fmt9(alpha) << "\n";
  std::cout << "beta           = " << fmt9(beta) << "\n";
  std::cout << "units_required = " << required << "\n";
  return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"delayed-choice eraser protocol: planning, simulation, classification"};
  app.require_subcommand(1);

  std::string config_path;
  std::string model = "causal";
  std::string choice = "erase";
  std::int64_t units = 1000;
  std::uint64_t seed = 0;
  std::string mode = "parallel";
  double alpha = 0.003;
  double beta = 0.003;
  std::string format = "human";
  std::string dump_path;
  std::string output_path;
  std::int64_t observed = 0;

  CLI::App *plan_cmd = app.add_subcommand("plan", "derive plan quantities and validate them");
  plan_cmd->add_option("--config", config_path, "key = value config file");

  CLI::App *sim_cmd = app.add_subcommand("simulate", "run a seeded campaign and classify it");
  sim_cmd->add_option("--config", config_path, "key = value config file");
  sim_cmd->add_option("--model", model, "detection model")
      ->check(CLI::IsMember({"causal", "ic"}));
  sim_cmd->add_option("--choice", choice, "idler operation")
      ->check(CLI::IsMember({"erase", "preserve"}));
  sim_cmd->add_option("--units", units, "units per campaign")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", seed, "campaign master seed");
  sim_cmd->add_option("--mode", mode, "unit execution scheme")
      ->check(CLI::IsMember({"parallel", "sequential"}));
  sim_cmd->add_option("--alpha", alpha, "two-sided significance")
      ->check(CLI::Range(1e-12, 0.499));
  sim_cmd->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"human", "machine"}));
  sim_cmd->add_option("--dump-traces", dump_path, "write per-event TSV records here");
  sim_cmd->add_option("--output", output_path, "write the report here instead of stdout");

  CLI::App *ana_cmd = app.add_subcommand("analyze", "classify an externally measured total");
  ana_cmd->add_option("--config", config_path, "key = value config file");
  ana_cmd->add_option("--observed", observed, "total monitored count")
      ->required()
      ->check(CLI::NonNegativeNumber);
  ana_cmd->add_option("--units", units, "units the total was aggregated over")
      ->check(CLI::PositiveNumber);
  ana_cmd->add_option("--alpha", alpha, "two-sided significance")
      ->check(CLI::Range(1e-12, 0.499));
  ana_cmd->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"human", "machine"}));

  CLI::App *pow_cmd = app.add_subcommand("power", "units needed to separate the two models");
  pow_cmd->add_option("--config", config_path, "key = value config file");
  pow_cmd->add_option("--alpha", alpha, "error bound, first kind")
      ->check(CLI::Range(1e-12, 0.499));
  pow_cmd->add_option("--beta", beta, "error bound, second kind")
      ->check(CLI::Range(1e-12, 0.499));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (plan_cmd->parsed()) return run_plan(config_path);
    if (sim_cmd->parsed())
      return run_simulate(config_path, model, choice, units, seed, mode, alpha, format,
                          dump_path, output_path);
    if (ana_cmd->parsed()) return run_analyze(config_path, observed, units, alpha, format);
    if (pow_cmd->parsed()) return run_power(config_path, alpha, beta);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitConfigError;
}
