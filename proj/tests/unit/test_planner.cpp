#include <doctest.h>

#include <cmath>

#include "rmcert/bounds.hpp"
#include "rmcert/errors.hpp"
#include "rmcert/estimation.hpp"
#include "rmcert/moments.hpp"
#include "rmcert/planner.hpp"

using namespace rmcert;

TEST_CASE("required M is the smallest M meeting the target") {
  const ErrorBarMethod methods[] = {ErrorBarMethod::CantelliTwoSided, ErrorBarMethod::BernsteinRange,
                                    ErrorBarMethod::ChernoffVariance, ErrorBarMethod::BernsteinVariance};
  for (auto m : methods) {
    for (double delta : {0.01, 0.003}) {
      const double v = variance_upper_bound(6, 30).value;
      const auto M = required_m_for_variance(m, 30, 0.9, delta, v);
      CHECK(error_bar(m, static_cast<long>(M), 30, 0.9, v).delta <= delta);
      if (M > 1) CHECK(error_bar(m, static_cast<long>(M - 1), 30, 0.9, v).delta > delta);
    }
  }
}

TEST_CASE("required M falls as the tolerance loosens") {
  std::int64_t prev = required_m(8, 50, 0.9, 0.05, ErrorBarMethod::CantelliTwoSided);
  for (double rel : {0.1, 0.2, 0.5}) {
    const auto M = required_m(8, 50, 0.9, rel, ErrorBarMethod::CantelliTwoSided);
    CHECK(M <= prev);
    prev = M;
  }
}

TEST_CASE("minimum total budget is consistent") {
  const auto plan = min_total_budget(10, 0.9, 0.1, ErrorBarMethod::CantelliTwoSided);
  CHECK(plan.m_total == plan.m_settings * plan.k_shots);
  CHECK(plan.achieved <= plan.delta);
  CHECK(plan.k_shots >= 2);
  for (long k : {plan.k_shots / 2, plan.k_shots * 2}) {
    if (k < 2) continue;
    CHECK(required_m(10, k, 0.9, 0.1, ErrorBarMethod::CantelliTwoSided) * k >= plan.m_total);
  }
  CHECK(optimal_k(10) > 1.0);
}

TEST_CASE("certification budget meets the tail requirement") {
  const int n = 7;
  const auto c = Criterion::k_sep(2);
  const double target = ghz_moment_closed(n, 2).to_double();
  const auto plan = certification_budget(n, c, target, 0.9);
  CHECK(plan.achieved <= 0.1);
  CHECK(plan.delta == doctest::Approx(target - ksep_bound_r2(n, 2).to_double()));
  CHECK(one_sided_tail(plan.method, plan.m_settings, plan.k_shots, plan.variance_bound, plan.delta) <= 0.1);
  CHECK(one_sided_tail(plan.method, plan.m_settings - 1, plan.k_shots, plan.variance_bound, plan.delta) > 0.1);
}

TEST_CASE("certification is infeasible when the target does not violate") {
  const double bound = ksep_bound_r2(7, 2).to_double();
  CHECK_THROWS_AS(certification_budget(7, Criterion::k_sep(2), bound * 0.9, 0.9), InfeasibleError);
}

TEST_CASE("Cantelli M scales with the inverse square of the tolerance") {
  for (long k : {10L, 100L}) {
    const auto m1 = required_m(10, k, 0.9, 0.05, ErrorBarMethod::CantelliTwoSided);
    const auto m2 = required_m(10, k, 0.9, 0.1, ErrorBarMethod::CantelliTwoSided);
    CHECK(std::abs(static_cast<double>(m1) / 4.0 - static_cast<double>(m2)) <= 1.0);
  }
}

TEST_CASE("Cantelli M matches the assembled closed form") {
  const int n = 10;
  const long k = 100;
  const double r2 = ghz_moment_closed(n, 2).to_double();
  const double r4 = ghz_moment_closed(n, 4).to_double();
  double a, b, c;
  variance_coefficients_double(k, a, b, c);
  const double delta = 0.1 * r2;
  const double expected = std::ceil(19.0 * (a * r4 + b * r2 + c) / (delta * delta));
  CHECK(std::abs(static_cast<double>(required_m(n, k, 0.9, 0.1, ErrorBarMethod::CantelliTwoSided)) - expected) <= 1.0);
}

TEST_CASE("M decreases with K and the optimal K ignores gamma and delta") {
  std::int64_t prev = required_m(10, 2, 0.9, 0.1, ErrorBarMethod::CantelliTwoSided);
  for (long k = 3; k < 2000; k += 37) {
    const auto m = required_m(10, k, 0.9, 0.1, ErrorBarMethod::CantelliTwoSided);
    CHECK(m <= prev);
    prev = m;
  }
  auto argmin = [](double gamma, double rel) {
    long best = 2;
    double best_total = 1e300;
    for (long k = 2; k <= 400; ++k) {
      const double total =
          static_cast<double>(required_m(10, k, gamma, rel, ErrorBarMethod::CantelliTwoSided)) * k;
      if (total < best_total) {
        best_total = total;
        best = k;
      }
    }
    return best;
  };
  const long k0 = argmin(0.9, 0.1);
  CHECK(std::abs(k0 - argmin(0.99, 0.1)) <= 1);
  CHECK(std::abs(k0 - argmin(0.9, 0.01)) <= 1);
  CHECK(std::abs(static_cast<double>(k0) - optimal_k(10)) <= 1.5);
  double prev_k = optimal_k(5);
  for (int n = 6; n <= 60; ++n) {
    CHECK(optimal_k(n) > prev_k);
    prev_k = optimal_k(n);
  }
}

TEST_CASE("Bernstein loses at large N but gains as gamma approaches one") {
  const auto cantelli_big = min_total_budget(30, 0.9, 0.1, ErrorBarMethod::CantelliTwoSided);
  const auto bernstein_big = min_total_budget(30, 0.9, 0.1, ErrorBarMethod::BernsteinRange);
  CHECK(bernstein_big.m_total > cantelli_big.m_total);
  const auto cantelli_sure = min_total_budget(10, 0.99999, 0.1, ErrorBarMethod::CantelliTwoSided);
  const auto bernstein_sure = min_total_budget(10, 0.99999, 0.1, ErrorBarMethod::BernsteinRange);
  CHECK(bernstein_sure.m_total < cantelli_sure.m_total);
}

TEST_CASE("certification budgets diverge at the noise threshold") {
  const int n = 9;
  const auto c = Criterion::k_sep(2);
  const double p_star = noise_threshold(n, 2);
  std::int64_t prev = 0;
  for (double frac : {0.0, 0.5, 0.8, 0.95, 0.99}) {
    const auto plan = certification_budget(n, c, noisy_ghz_r2(n, frac * p_star), 0.9);
    CHECK(plan.m_total > prev);
    prev = plan.m_total;
  }
  CHECK_THROWS_AS(certification_budget(n, c, noisy_ghz_r2(n, p_star * 1.0001), 0.9), InfeasibleError);
}
