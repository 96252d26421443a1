#include <doctest.h>

#include <cmath>

#include "rmcert/confidence.hpp"
#include "rmcert/errors.hpp"

using namespace rmcert;

namespace {
const ErrorBarMethod kAll[] = {ErrorBarMethod::CantelliTwoSided, ErrorBarMethod::BernsteinRange,
                               ErrorBarMethod::ChernoffVariance, ErrorBarMethod::BernsteinVariance};
}

TEST_CASE("elementary quantities") {
  CHECK(log_term(0.9) == doctest::Approx(std::log(20.0)));
  CHECK(cantelli_one_sided_tail(1.0, 1.0) == doctest::Approx(0.5));
  CHECK(cantelli_two_sided(1.0, 0.9) == doctest::Approx(std::sqrt(19.0)));
  CHECK(range_constant(5) == doctest::Approx(1.25));
  CHECK(bernstein_variance_cap(2) == doctest::Approx(1.0));
}

TEST_CASE("method names round trip") {
  for (auto m : kAll) CHECK(parse_method(method_name(m)) == m);
  CHECK(parse_method("cantelli-one-sided") == ErrorBarMethod::CantelliOneSided);
  CHECK_THROWS_AS(parse_method("gauss"), ValidationError);
}

TEST_CASE("error bars shrink with more settings and grow with confidence") {
  for (auto m : kAll) {
    double prev = error_bar(m, 10, 20, 0.9, 0.05).delta;
    for (long M : {100L, 1000L, 100000L}) {
      const double d = error_bar(m, M, 20, 0.9, 0.05).delta;
      CHECK(d <= prev);
      prev = d;
    }
    CHECK(error_bar(m, 1000, 20, 0.95, 0.05).delta >= error_bar(m, 1000, 20, 0.8, 0.05).delta);
  }
}

TEST_CASE("one-sided tails fall with the deviation") {
  for (auto m : kAll) {
    double prev = 1.0;
    for (double d : {0.001, 0.01, 0.05, 0.2}) {
      const double tail = one_sided_tail(m, 500, 20, 0.05, d);
      CHECK(tail <= prev + 1e-15);
      CHECK(tail >= 0.0);
      CHECK(tail <= 1.0);
      prev = tail;
    }
  }
}

TEST_CASE("Chernoff inflation restores validity") {
  const double v = 1e-4;
  const auto small = chernoff_error_bar(5, 1000, 0.9, v);
  CHECK(small.eta > 1.0);
  const auto large = chernoff_error_bar(100000000, 1000, 0.9, 0.05);
  CHECK(large.eta == 1.0);
  CHECK(large.delta == doctest::Approx(std::sqrt(2.0 * log_term(0.9) * 0.05 / 1e8)));
}

TEST_CASE("invalid confidence levels are rejected") {
  CHECK_THROWS_AS(error_bar(ErrorBarMethod::CantelliTwoSided, 10, 10, 1.0, 0.1), ValidationError);
  CHECK_THROWS_AS(error_bar(ErrorBarMethod::CantelliTwoSided, 0, 10, 0.9, 0.1), ValidationError);
}
