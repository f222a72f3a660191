#include <doctest.h>

#include <cmath>
#include <string>

#include "dcqe/errors.hpp"
#include "dcqe/plan.hpp"

using namespace dcqe;

namespace {

bool has_fail(const DerivedPlan &plan, const std::string &code) {
  for (const auto &r : plan.validation)
    if (r.status == CheckStatus::Fail && r.code == code) return true;
  return false;
}

bool has_warn(const DerivedPlan &plan, const std::string &code) {
  for (const auto &r : plan.validation)
    if (r.status == CheckStatus::Warn && r.code == code) return true;
  return false;
}

} // namespace

TEST_SUITE("planner") {

TEST_CASE("defaults derive the reference quantities") {
  const ExperimentConfig cfg;
  const DerivedPlan plan = derive_plan(cfg);

  CHECK(plan.f_pump == doctest::Approx(4.1666666667e8).epsilon(1e-9));
  CHECK(plan.mu0 == doctest::Approx(1666.6666667).epsilon(1e-9));
  CHECK(plan.mode_count == 1500);
  CHECK(plan.dt_bin == doctest::Approx(400e-6 / 1500.0).epsilon(1e-12));
  CHECK(plan.n_entangled == doctest::Approx(150.0).epsilon(1e-9));
  CHECK(plan.t_observe == doctest::Approx(440e-6).epsilon(1e-12));
  CHECK(plan.t_end == doctest::Approx(510e-6).epsilon(1e-12));
  CHECK(plan.ordering_ok());

  for (const auto &r : plan.validation) CHECK(r.status != CheckStatus::Fail);
}

TEST_CASE("unity efficiencies give the minimal plan") {
  ExperimentConfig cfg;
  cfg.n_signal = 1;
  cfg.p_s = 1.0;
  cfg.p_i = 1.0;
  cfg.p_pair = 1.0;
  cfg.t_phys = 1.0;
  cfg.t_delay = 2.0;
  cfg.t_choice = 1.5;
  cfg.modes_per_photon = 3;

  const DerivedPlan plan = derive_plan(cfg);
  CHECK(plan.f_pump == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(plan.dt_bin == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(plan.mode_count == 3);
  CHECK(plan.mu0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(plan.n_entangled == doctest::Approx(1.0).epsilon(1e-12));
  // p_pair = 1 is legal but far outside the single-photon operating regime.
  CHECK(has_fail(plan, kMultiPairRegime));
}

TEST_CASE("doubling the signal target halves the bin and doubles the rate") {
  ExperimentConfig cfg;
  cfg.n_signal = 1000;
  const DerivedPlan plan = derive_plan(cfg);
  CHECK(plan.dt_bin == doctest::Approx(133.33e-9).epsilon(1e-3));
  CHECK(plan.f_pump == doctest::Approx(8.3333333333e8).epsilon(1e-9));
  CHECK(plan.mode_count == 3000);
}

TEST_CASE("construction identities hold across a parameter grid") {
  for (const double p_s : {0.05, 0.3, 1.0})
    for (const double p_pair : {0.001, 0.01, 0.03})
      for (const std::int64_t n_signal : {1LL, 17LL, 500LL, 9999LL}) {
        ExperimentConfig cfg;
        cfg.p_s = p_s;
        cfg.p_pair = p_pair;
        cfg.n_signal = n_signal;
        const DerivedPlan plan = derive_plan(cfg);

        // Recovering n_signal from f_pump must be exact to double precision.
        const double recovered = plan.f_pump * cfg.p_pair * cfg.p_s * cfg.t_phys;
        CHECK(recovered == doctest::Approx(double(n_signal)).epsilon(1e-12));
        CHECK(plan.dt_bin * double(plan.mode_count) ==
              doctest::Approx(cfg.t_phys).epsilon(1e-12));
        CHECK(plan.t_observe == doctest::Approx((1.0 + cfg.epsilon) * cfg.t_phys).epsilon(1e-12));
      }
}

TEST_CASE("ordering check passes the default window") {
  const ExperimentConfig cfg;
  const DerivedPlan plan = derive_plan(cfg);
  const ValidationReport report = validate_ordering(plan, cfg);
  CHECK(report.passed());
  CHECK(report.records.size() == 2);
}

TEST_CASE("choice before the observation window ends is rejected") {
  ExperimentConfig cfg;
  cfg.t_choice = 430e-6; // t_observe = 440 us
  const DerivedPlan plan = derive_plan(cfg);
  CHECK_FALSE(plan.ordering_ok());
  CHECK(has_fail(plan, kWheelersConditionViolated));
  CHECK_FALSE(has_fail(plan, kChoiceAfterMemoryExpiry));
}

TEST_CASE("choice after memory expiry is rejected") {
  ExperimentConfig cfg;
  cfg.t_choice = 510e-6; // t_delay = 500 us
  const DerivedPlan plan = derive_plan(cfg);
  CHECK_FALSE(plan.ordering_ok());
  CHECK(has_fail(plan, kChoiceAfterMemoryExpiry));
  CHECK_FALSE(has_fail(plan, kWheelersConditionViolated));
}

TEST_CASE("boundary equality counts as violation on both inequalities") {
  ExperimentConfig cfg;
  cfg.t_choice = 440e-6;
  CHECK(has_fail(derive_plan(cfg), kWheelersConditionViolated));
  cfg.t_choice = 500e-6;
  CHECK(has_fail(derive_plan(cfg), kChoiceAfterMemoryExpiry));
}

TEST_CASE("ordering pass is monotone in extra slack") {
  ExperimentConfig cfg;
  const DerivedPlan base = derive_plan(cfg);
  REQUIRE(base.ordering_ok());

  // More storage time or a smaller margin can never break a passing ordering.
  for (const double delay : {500e-6, 600e-6, 900e-6}) {
    for (const double eps : {0.1, 0.05, 0.01}) {
      ExperimentConfig c = cfg;
      c.t_delay = delay;
      c.epsilon = eps;
      CHECK(derive_plan(c).ordering_ok());
    }
  }
}

TEST_CASE("single photon regime passes the default operating point") {
  const ExperimentConfig cfg;
  const DerivedPlan plan = derive_plan(cfg);
  const ValidationReport report = check_single_photon_regime(plan, cfg);
  CHECK(report.passed());
  // Mean spacing at the defaults is 0.8 us, far above 100 coherence times.
  CHECK(report.records.size() == 2);
}

TEST_CASE("long coherence time triggers the overlap failure") {
  ExperimentConfig cfg;
  cfg.coherence_time = 1e-6;
  CHECK(has_fail(derive_plan(cfg), kCoherenceOverlap));
}

TEST_CASE("large pair probability triggers the multi-pair failure") {
  ExperimentConfig cfg;
  cfg.p_pair = 0.1;
  CHECK(has_fail(derive_plan(cfg), kMultiPairRegime));
}

TEST_CASE("check thresholds are configurable") {
  ExperimentConfig cfg;
  cfg.p_pair = 0.1;
  cfg.multi_pair_threshold = 0.02; // p_pair^2 = 0.01 now tolerated
  CHECK_FALSE(has_fail(derive_plan(cfg), kMultiPairRegime));

  cfg = ExperimentConfig{};
  cfg.coherence_time = 1e-8;
  cfg.coherence_window_factor = 1e4; // raises the floor to 100 us
  CHECK(has_fail(derive_plan(cfg), kCoherenceOverlap));
}

TEST_CASE("hardware bounds warn without failing") {
  ExperimentConfig cfg;
  cfg.n_signal = 40000; // dt_bin = 3.3 ns, mode_count = 120000
  const DerivedPlan plan = derive_plan(cfg);
  CHECK(has_warn(plan, kBinBelowHardwareFloor));
  CHECK(has_warn(plan, kModeCountAboveDemonstrated));
  CHECK(plan.ordering_ok());
  for (const auto &r : plan.validation)
    if (r.check == "hardware_bounds") CHECK(r.status != CheckStatus::Fail);

  ExperimentConfig slow;
  slow.t_delay = 2e-3;
  slow.t_choice = 1.5e-3;
  CHECK(has_warn(derive_plan(slow), kDelayBeyondDemonstrated));

  CHECK_FALSE(has_warn(derive_plan(ExperimentConfig{}), kBinBelowHardwareFloor));
}

TEST_CASE("invalid configurations are rejected with the field named") {
  const auto rejects = [](auto mutate, const char *field) {
    ExperimentConfig cfg;
    mutate(cfg);
    try {
      derive_plan(cfg);
      FAIL_CHECK("expected rejection for field " << field);
    } catch (const InvalidConfigError &e) {
      CHECK(std::string(e.what()).find(field) != std::string::npos);
    }
  };

  rejects([](ExperimentConfig &c) { c.p_s = 1.5; }, "p_s");
  rejects([](ExperimentConfig &c) { c.p_s = 0.0; }, "p_s");
  rejects([](ExperimentConfig &c) { c.p_i = -0.1; }, "p_i");
  rejects([](ExperimentConfig &c) { c.p_pair = 0.0; }, "p_pair");
  rejects([](ExperimentConfig &c) { c.fidelity = 1.01; }, "fidelity");
  rejects([](ExperimentConfig &c) { c.fidelity = -0.5; }, "fidelity");
  rejects([](ExperimentConfig &c) { c.t_phys = 0.0; }, "t_phys");
  rejects([](ExperimentConfig &c) { c.t_delay = -1.0; }, "t_delay");
  rejects([](ExperimentConfig &c) { c.epsilon = 0.0; }, "epsilon");
  rejects([](ExperimentConfig &c) { c.n_signal = 0; }, "n_signal");
  rejects([](ExperimentConfig &c) { c.modes_per_photon = 0; }, "modes_per_photon");
  rejects([](ExperimentConfig &c) { c.coherence_time = 0.0; }, "coherence_time");
  rejects([](ExperimentConfig &c) { c.readout_time = 0.0; }, "readout_time");
  rejects([](ExperimentConfig &c) { c.t_phys = 600e-6; }, "t_phys"); // >= t_delay

  // Zero fidelity is a legal, meaningful configuration.
  ExperimentConfig cfg;
  cfg.fidelity = 0.0;
  CHECK_NOTHROW(derive_plan(cfg));
}

TEST_CASE("plan report carries quantities, checks and notes") {
  const ExperimentConfig cfg;
  const DerivedPlan plan = derive_plan(cfg);
  const std::string text = plan_report(plan, cfg, {"example note"});
  CHECK(text.find("f_pump") != std::string::npos);
  CHECK(text.find("mode_count  = 1500") != std::string::npos);
  CHECK(text.find("choice_after_observation: pass") != std::string::npos);
  CHECK(text.find("note: example note") != std::string::npos);
}

} // TEST_SUITE
