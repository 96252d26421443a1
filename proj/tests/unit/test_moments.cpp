#include <doctest.h>

#include <random>

#include "rmcert/errors.hpp"
#include "rmcert/moments.hpp"

using namespace rmcert;

namespace {

std::vector<BlochDirection> random_setting(int n, std::mt19937_64& rng) {
  std::vector<BlochDirection> s;
  for (int i = 0; i < n; ++i) s.push_back(sample_direction(rng));
  return s;
}

Eigen::Matrix2cd random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix2cd m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = {g(rng), g(rng)};
  Eigen::HouseholderQR<Eigen::Matrix2cd> qr(m);
  return qr.householderQ();
}

}  // namespace

TEST_CASE("designs average polynomials of their order exactly") {
  CHECK(design_error(pauli_design(), 3) < 1e-14);
  CHECK(design_error(icosahedron_design(), 5) < 1e-14);
  // Neither set goes one degree further.
  CHECK(design_error(pauli_design(), 4) > 1e-3);
  CHECK(design_error(icosahedron_design(), 6) > 1e-3);
  CHECK(pauli_design().axes.size() == 3);
  CHECK(icosahedron_design().axes.size() == 6);
  CHECK(sphere_monomial_average(2, 0, 0) == doctest::Approx(1.0 / 3));
  CHECK(sphere_monomial_average(4, 0, 0) == doctest::Approx(1.0 / 5));
}

TEST_CASE("off-sphere directions are rejected") {
  CHECK_THROWS_AS(BlochDirection::make(1.0, 1.0, 0.0), ValidationError);
  const auto u = BlochDirection::from_angles(0.7, 1.9);
  CHECK(u.theta() == doctest::Approx(0.7));
  CHECK(u.phi() == doctest::Approx(1.9));
}

TEST_CASE("closed-form GHZ moments") {
  CHECK(ghz_moment_closed(2, 2) == Rational(1, 3));
  CHECK(ghz_moment_closed(3, 2) == Rational(4, 27));
  CHECK(ghz_moment_closed(5, 2) == Rational(16, 243));
  CHECK(bell_product_r4(4) == Rational(1, 25));
  CHECK(noisy_ghz_r2(5, 0.2) == doctest::Approx(0.64 * 16.0 / 243.0));
}

TEST_CASE("dense contraction agrees with the analytic correlation") {
  std::mt19937_64 rng(7);
  for (int n : {2, 3, 5}) {
    const StateModel noisy = make_noisy_ghz(n, 0.35);
    const StateModel dense = densify(std::get<NoisyGhz>(noisy));
    const StateModel blocks = BlockProduct({{BlockKind::Bell, 2}, {BlockKind::Ghz, 3}});
    const StateModel blocks_dense = densify(std::get<BlockProduct>(blocks));
    for (int r = 0; r < 20; ++r) {
      const auto s = random_setting(n, rng);
      CHECK(correlation(dense, s) == doctest::Approx(correlation(noisy, s)).epsilon(1e-12));
      const auto s5 = random_setting(5, rng);
      CHECK(correlation(blocks_dense, s5) == doctest::Approx(correlation(blocks, s5)).epsilon(1e-12));
    }
  }
}

TEST_CASE("design sums match closed forms for every representation") {
  for (int n = 2; n <= 7; ++n) {
    const StateModel pure = make_noisy_ghz(n, 0.0);
    for (int t : {2, 4}) {
      const double exact = ghz_moment_closed(n, t).to_double();
      CHECK(moment_design(pure, t) == doctest::Approx(exact).epsilon(1e-12));
      CHECK(moment_design(StateModel(densify(std::get<NoisyGhz>(pure))), t) ==
            doctest::Approx(exact).epsilon(1e-12));
    }
  }
  const StateModel bell2 = BlockProduct({{BlockKind::Bell, 2}, {BlockKind::Bell, 2}});
  CHECK(moment_design(bell2, 4) == doctest::Approx(1.0 / 25));
}

TEST_CASE("moments are invariant under local unitaries") {
  std::mt19937_64 rng(11);
  const DenseState base = densify(make_noisy_ghz(4, 0.2));
  DenseState rotated = base;
  for (int q = 0; q < 4; ++q) rotated = rotated.apply_local(q, random_unitary(rng));
  for (int t : {2, 4}) {
    CHECK(moment_design(StateModel(rotated), t) ==
          doctest::Approx(moment_design(StateModel(base), t)).epsilon(1e-12));
  }
}

TEST_CASE("Monte Carlo average agrees with the design sum") {
  const StateModel s = make_noisy_ghz(4, 0.1);
  for (int t : {2, 4}) {
    const auto mc = monte_carlo_moment(s, t, 200000, 3);
    CHECK(std::abs(mc.mean - moment_design(s, t)) < 5.0 * mc.std_error);
  }
}

TEST_CASE("dense design sums refuse oversized inputs") {
  CHECK_THROWS_AS(moment_design(StateModel(densify(make_noisy_ghz(10, 0.1))), 4), ResourceError);
  CHECK_THROWS_AS(moment_design(make_noisy_ghz(3, 0.1), 3), ValidationError);
}
