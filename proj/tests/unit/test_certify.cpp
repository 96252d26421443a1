#include <doctest.h>

#include "rmcert/certify.hpp"
#include "rmcert/errors.hpp"
#include "rmcert/moments.hpp"
#include "rmcert/planner.hpp"

using namespace rmcert;

TEST_CASE("four qubits: no k-separability verdicts") {
  ExperimentOptions opt;
  opt.m_settings = 200;
  opt.k_shots = 20;
  opt.seed = 1;
  const auto records = run_experiment(make_noisy_ghz(4, 0.0), opt);
  const auto report = certify_all(records, 0.9);
  for (const auto& v : report.verdicts) CHECK(v.criterion.criterion.kind != CriterionKind::KSep);
  CHECK_FALSE(report.notes.empty());
  CHECK_THROWS_AS(test_criterion(report.estimate, Criterion::k_sep(2), 0.9), ValidationError);
}

TEST_CASE("verdicts are ordered by bound and carry depth") {
  ExperimentOptions opt;
  opt.m_settings = 3000;
  opt.k_shots = 50;
  opt.seed = 2;
  const auto report = certify_all(run_experiment(make_noisy_ghz(5, 0.0), opt), 0.9);
  for (std::size_t i = 1; i < report.verdicts.size(); ++i) {
    CHECK(report.verdicts[i - 1].bound >= report.verdicts[i].bound);
  }
  for (const auto& v : report.verdicts) {
    CHECK(v.delta_obs == doctest::Approx(v.observed - v.bound_value));
    if (v.verdict == VerdictKind::Violated) {
      CHECK(v.confidence >= 0.9);
      if (v.criterion.criterion.kind != CriterionKind::WClass) CHECK(v.depth.has_value());
    } else {
      CHECK_FALSE(v.depth.has_value());
    }
    if (v.delta_obs <= 0) CHECK(v.verdict == VerdictKind::NotViolated);
  }
}

TEST_CASE("the product state never certifies entanglement") {
  ExperimentOptions opt;
  opt.m_settings = 500;
  opt.k_shots = 20;
  opt.seed = 3;
  const StateModel product = BlockProduct({{BlockKind::SingleQubitPure, 1},
                                           {BlockKind::SingleQubitPure, 1},
                                           {BlockKind::SingleQubitPure, 1},
                                           {BlockKind::SingleQubitPure, 1},
                                           {BlockKind::SingleQubitPure, 1}});
  const auto report = certify_all(run_experiment(product, opt), 0.9);
  CHECK_FALSE(report.summary_depth.has_value());
}

TEST_CASE("planned budgets: violation exactly when the planned margin is reached") {
  const int n = 5;
  const auto c = Criterion::k_sep(2);
  const double target = ghz_moment_closed(n, 2).to_double();
  const auto plan = certification_budget(n, c, target, 0.9);
  int violated = 0, reached = 0;
  for (int r = 0; r < 100; ++r) {
    ExperimentOptions opt;
    opt.m_settings = plan.m_settings;
    opt.k_shots = plan.k_shots;
    opt.seed = 1000 + r;
    const auto stats = to_stats(run_experiment(make_noisy_ghz(n, 0.0), opt));
    const auto v = test_criterion(moment_estimate(stats, 2, n), c, 0.9);
    violated += v.verdict == VerdictKind::Violated;
    reached += v.delta_obs >= plan.delta;
    if (v.delta_obs >= plan.delta) CHECK(v.verdict == VerdictKind::Violated);
  }
  CHECK(violated >= reached);
}

TEST_CASE("planning for half the margin gives high power") {
  const int n = 5;
  const auto c = Criterion::k_sep(2);
  const double bound = ksep_bound_r2(n, 2).to_double();
  const double target = ghz_moment_closed(n, 2).to_double();
  const auto plan = certification_budget(n, c, bound + (target - bound) / 2, 0.9);
  int violated = 0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    ExperimentOptions opt;
    opt.m_settings = plan.m_settings;
    opt.k_shots = plan.k_shots;
    opt.seed = 5000 + r;
    const auto report = certify_all(run_experiment(make_noisy_ghz(n, 0.0), opt), 0.9);
    for (const auto& v : report.verdicts) {
      if (v.criterion.criterion == c && v.verdict == VerdictKind::Violated && report.summary_depth &&
          *report.summary_depth >= 5) {
        ++violated;
      }
    }
  }
  CHECK(violated >= 0.9 * reps);
}
