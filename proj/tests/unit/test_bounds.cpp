#include <doctest.h>

#include <cmath>

#include "rmcert/bounds.hpp"
#include "rmcert/errors.hpp"
#include "rmcert/moments.hpp"

using namespace rmcert;

TEST_CASE("bound examples") {
  CHECK(ksep_bound_r2(5, 2) == Rational(4, 81));
  CHECK(ksep_bound_r2(6, 2) == Rational(9, 243));
  CHECK(fullsep_bounds(3).r2 == Rational(1, 27));
  CHECK(fullsep_bounds(3).r4 == Rational(1, 125));
  CHECK(wclass_bound_r2(3) == Rational(11, 81));
  CHECK(ksep_bound_r4(7, 2) == ghz_moment_closed(5, 4) / Rational(5));
}

TEST_CASE("the 2-separable bound is one Bell pair times a smaller GHZ") {
  for (int n = 5; n <= 14; ++n) {
    CHECK(ksep_bound_r2(n, 2) == Rational(1, 3) * ghz_moment_closed(n - 2, 2));
  }
}

TEST_CASE("k-separability bounds decrease with k") {
  for (int n = 5; n <= 25; ++n) {
    for (int k = 2; k < (n - 1) / 2; ++k) CHECK(ksep_bound_r2(n, k + 1) < ksep_bound_r2(n, k));
    CHECK(ksep_bound_r2(n, 2) < ghz_moment_closed(n, 2));
  }
}

TEST_CASE("k-separability admissible range") {
  CHECK_THROWS_AS(require_ksep_range(4, 2), ValidationError);
  CHECK_NOTHROW(require_ksep_range(5, 2));
  CHECK_THROWS_AS(require_ksep_range(9, 5), ValidationError);
  CHECK_THROWS_AS(criterion_bound_r2(4, Criterion::k_sep(2)), ValidationError);
}

TEST_CASE("bounds are attained by their saturating states") {
  for (int n = 5; n <= 9; ++n) {
    for (int k = 2; k <= (n - 1) / 2; ++k) {
      const auto b = criterion_bound(n, Criterion::k_sep(k), 2);
      REQUIRE(b.saturating);
      CHECK(moment_design(StateModel(*b.saturating), 2) ==
            doctest::Approx(b.value.to_double()).epsilon(1e-12));
    }
  }
}

TEST_CASE("producibility bound") {
  const auto five = mprod_bound_r2(5, 5);
  CHECK(five.value == Rational(16, 243));
  CHECK(five.assignment == std::vector<int>{0, 0, 0, 0, 1});
  CHECK(mprod_bound_r2(6, 1).value == Rational(1, 729));
  for (int n = 3; n <= 20; ++n) {
    Rational prev = mprod_bound_r2(n, 1).value;
    CHECK(prev == fullsep_bounds(n).r2);
    for (int m = 2; m <= n; ++m) {
      const auto b = mprod_bound_r2(n, m);
      CHECK(b.value >= prev);
      int covered = 0;
      for (std::size_t i = 0; i < b.assignment.size(); ++i) covered += static_cast<int>(i + 1) * b.assignment[i];
      CHECK(covered == n);
      prev = b.value;
    }
  }
}

TEST_CASE("noise threshold sits on the bound") {
  for (int n : {5, 9, 15}) {
    for (int k = 2; k <= (n - 1) / 2; ++k) {
      const double p = noise_threshold(n, k);
      CHECK(p > 0.0);
      CHECK(p < 1.0);
      CHECK(noisy_ghz_r2(n, p) == doctest::Approx(ksep_bound_r2(n, k).to_double()).epsilon(1e-10));
    }
  }
  CHECK(noise_threshold(201, 3) == doctest::Approx(noise_threshold_asymptotic(3)).epsilon(1e-6));
}

TEST_CASE("depth implications") {
  CHECK(depth_implication(11, Criterion::k_sep(2)) == 11);
  CHECK(depth_implication(11, Criterion::k_sep(3)) == 6);
  CHECK(depth_implication(11, Criterion::m_producible(4)) == 5);
  CHECK(depth_implication(11, Criterion::full_sep()) == 2);
  CHECK_THROWS_AS(depth_implication(11, Criterion::w_class()), ValidationError);
}

TEST_CASE("criterion labels round trip") {
  for (const auto& c : applicable_criteria(9)) CHECK(parse_criterion(c.label()) == c);
  CHECK(parse_criterion("ksep(3)") == Criterion::k_sep(3));
  CHECK_THROWS_AS(parse_criterion("bogus"), ValidationError);
}

TEST_CASE("applicable criteria skip k-separability for N <= 4") {
  for (const auto& c : applicable_criteria(4)) CHECK(c.kind != CriterionKind::KSep);
  int ksep = 0;
  for (const auto& c : applicable_criteria(9)) ksep += c.kind == CriterionKind::KSep;
  CHECK(ksep == 3);
}

TEST_CASE("hypothesis caps never exceed the unrestricted caps") {
  for (int n = 5; n <= 12; ++n) {
    const auto all = hypothesis_caps(n, std::nullopt);
    for (const auto& c : applicable_criteria(n)) {
      const auto caps = hypothesis_caps(n, c);
      CHECK(caps.r2 <= all.r2);
      CHECK(caps.r4 <= all.r4);
    }
  }
  const auto flagged = hypothesis_caps(8, Criterion::k_sep(3));
  CHECK_FALSE(flagged.warnings.empty());
}
