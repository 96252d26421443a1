#include <doctest.h>

#include <cmath>

#include "rmcert/errors.hpp"
#include "rmcert/sampling.hpp"

using namespace rmcert;

namespace {

double total_variation(const ShotRecord& rec, const std::vector<double>& probs) {
  std::vector<double> freq(probs.size(), 0.0);
  const int n = rec.n_qubits();
  for (long s = 0; s < rec.k_shots; ++s) {
    std::size_t idx = 0;
    for (int q = 0; q < n; ++q) idx = (idx << 1) | (rec.outcome(s, q) == -1 ? 1u : 0u);
    freq[idx] += 1.0 / static_cast<double>(rec.k_shots);
  }
  double tv = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) tv += std::abs(freq[i] - probs[i]);
  return tv / 2.0;
}

}  // namespace

TEST_CASE("chain and dense samplers follow the Born rule at N = 6") {
  std::mt19937_64 rng(5);
  const StateModel states[] = {make_noisy_ghz(6, 0.3), BlockProduct::bell_ghz(6, 2)};
  for (const auto& state : states) {
    const auto setting = sample_setting(6, rng);
    const auto probs = outcome_distribution(state, setting.directions);
    double total = 0.0;
    for (double p : probs) total += p;
    CHECK(total == doctest::Approx(1.0));
    for (auto path : {SamplerPath::Chain, SamplerPath::Dense}) {
      const auto rec = sample_shots(state, setting, 200000, rng, RecordMode::Full, path);
      rec.check();
      CHECK(total_variation(rec, probs) < 0.02);
    }
  }
}

TEST_CASE("binomial counts have the right mean") {
  std::mt19937_64 rng(9);
  const StateModel state = make_noisy_ghz(4, 0.1);
  const auto setting = sample_setting(4, rng);
  const auto probs = outcome_distribution(state, setting.directions);
  double p_plus = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (std::popcount(i) % 2 == 0) p_plus += probs[i];
  }
  const long k = 400000;
  const auto rec = sample_shots(state, setting, k, rng, RecordMode::Compact);
  CHECK(rec.outcomes.empty());
  const double sd = std::sqrt(p_plus * (1 - p_plus) / k);
  CHECK(std::abs(static_cast<double>(rec.x_count) / k - p_plus) < 5 * sd);
}

TEST_CASE("experiments are reproducible for any thread count") {
  const StateModel state = make_noisy_ghz(5, 0.2);
  ExperimentOptions opt;
  opt.m_settings = 40;
  opt.k_shots = 16;
  opt.seed = 123;
  opt.mode = RecordMode::Full;
  const auto a = run_experiment(state, opt);
  opt.threads = 4;
  const auto b = run_experiment(state, opt);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].setting.setting_id == static_cast<std::int64_t>(i));
    CHECK(a[i].outcomes == b[i].outcomes);
    CHECK(a[i].x_count == b[i].x_count);
  }
  opt.seed = 124;
  CHECK(run_experiment(state, opt)[0].outcomes != a[0].outcomes);
}

TEST_CASE("marginal statistics need full records") {
  std::mt19937_64 rng(1);
  const StateModel state = make_noisy_ghz(3, 0.0);
  const auto setting = sample_setting(3, rng);
  const std::size_t subset[] = {0, 2};
  const auto compact = sample_shots(state, setting, 10, rng, RecordMode::Compact);
  CHECK_THROWS_AS(compact.stats(subset), ValidationError);
  const auto full = sample_shots(state, setting, 10, rng, RecordMode::Full);
  CHECK(full.stats(subset).k_shots == 10);
  CHECK_THROWS_AS(sample_shots(state, setting, 10, rng, RecordMode::Full, SamplerPath::Binomial),
                  ValidationError);
}

TEST_CASE("GHZ outcomes along z are perfectly correlated") {
  std::mt19937_64 rng(2);
  const StateModel state = make_noisy_ghz(4, 0.0);
  MeasurementSetting z{0, std::vector<BlochDirection>(4, kAxisZ)};
  const auto rec = sample_shots(state, z, 1000, rng, RecordMode::Full);
  CHECK(rec.x_count == 1000);
}
