#include <doctest.h>

#include "rmcert/errors.hpp"
#include "rmcert/estimation.hpp"
#include "rmcert/moments.hpp"

using namespace rmcert;

namespace {

Rational binomial(long n, long k) {
  Rational r(1);
  for (long i = 1; i <= k; ++i) r = r * Rational(n - k + i, i);
  return r;
}

Rational pow_r(const Rational& x, long e) {
  Rational r(1);
  for (long i = 0; i < e; ++i) r = r * x;
  return r;
}

}  // namespace

TEST_CASE("single-setting estimator examples") {
  CHECK(e_hat_t_exact({2, 2}, 2) == Rational(1));
  CHECK(e_hat_t_exact({2, 1}, 2) == Rational(-1));
  CHECK(p_hat_k_exact({5, 3}, 2) == Rational(6, 20));
  CHECK(e_hat_t({4, 4}, 4) == doctest::Approx(1.0));
  CHECK_THROWS_AS(e_hat_t({3, 1}, 4), ValidationError);
}

TEST_CASE("estimators are exactly unbiased") {
  for (long k : {4L, 5L, 9L}) {
    for (const Rational& p : {Rational(1, 3), Rational(1, 2), Rational(7, 8)}) {
      const Rational e = p * Rational(2) - Rational(1);
      for (int t : {2, 4}) {
        Rational mean(0);
        for (long y = 0; y <= k; ++y) {
          const Rational w = binomial(k, y) * pow_r(p, y) * pow_r(Rational(1) - p, k - y);
          mean += w * e_hat_t_exact({k, y}, t);
        }
        CHECK(mean == pow_r(e, t));
      }
    }
  }
}

TEST_CASE("second moment of the estimator matches the variance coefficients") {
  for (long k : {2L, 3L, 6L, 10L}) {
    const auto c = variance_coefficients(k);
    for (const Rational& p : {Rational(1, 5), Rational(2, 3)}) {
      const Rational e = p * Rational(2) - Rational(1);
      Rational second(0);
      for (long y = 0; y <= k; ++y) {
        const Rational w = binomial(k, y) * pow_r(p, y) * pow_r(Rational(1) - p, k - y);
        const Rational v = e_hat_t_exact({k, y}, 2);
        second += w * v * v;
      }
      CHECK(second == c.a * pow_r(e, 4) + c.b * pow_r(e, 2) + c.c);
      double a, b, cc;
      variance_coefficients_double(k, a, b, cc);
      CHECK(a == doctest::Approx(c.a.to_double()));
      CHECK(b == doctest::Approx(c.b.to_double()));
      CHECK(cc == doctest::Approx(c.c.to_double()));
    }
  }
}

TEST_CASE("moment estimate averages settings") {
  const std::vector<SettingStats> recs{{4, 4}, {4, 0}, {4, 2}};
  const auto est = moment_estimate(recs, 2, 3);
  CHECK(est.value == doctest::Approx((1.0 + 1.0 + e_hat_t({4, 2}, 2)) / 3.0));
  CHECK(est.m_settings == 3);
  CHECK(est.variance_is_plugin);
  const std::vector<SettingStats> small{{2, 2}, {2, 1}};
  CHECK_FALSE(moment_estimate(small, 2, 3).variance_is_plugin);
}

TEST_CASE("moment estimate input validation") {
  const std::vector<SettingStats> mixed{{4, 1}, {5, 1}};
  CHECK_THROWS_AS(moment_estimate(mixed, 2, 3), ValidationError);
  CHECK_THROWS_AS(moment_estimate(std::vector<SettingStats>{}, 2, 3), ValidationError);
  const std::vector<SettingStats> bad{{4, 7}};
  CHECK_THROWS_AS(moment_estimate(bad, 2, 3), ValidationError);
}

TEST_CASE("variance bound dominates the exact estimator variance") {
  for (long k : {2L, 10L, 100L}) {
    const auto vb = variance_upper_bound(5, k);
    const double r2 = ghz_moment_closed(5, 2).to_double();
    const double r4 = ghz_moment_closed(5, 4).to_double();
    CHECK(variance_r2_estimator(r2, r4, 1, k) <= vb.value);
    CHECK(variance_upper_bound(5, k, Criterion::full_sep()).value <= vb.value);
  }
  CHECK(variance_r2_estimator(0.1, 0.05, 10, 5) ==
        doctest::Approx(variance_r2_estimator(0.1, 0.05, 1, 5) / 10.0));
}
