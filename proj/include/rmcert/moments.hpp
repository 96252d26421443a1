#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "rmcert/rational.hpp"
#include "rmcert/states.hpp"

namespace rmcert {

inline constexpr double kDirectionTolerance = 1e-12;
inline constexpr int kMaxDenseDesignQubitsT2 = 12;
inline constexpr int kMaxDenseDesignQubitsT4 = 9;

/// Unit vector on the Bloch sphere; sigma_u = x X + y Y + z Z.
struct BlochDirection {
  double x = 0.0;
  double y = 0.0;
  double z = 1.0;

  /// Checked constructor; throws ValidationError off the unit sphere.
  static BlochDirection make(double x, double y, double z);
  static BlochDirection from_angles(double theta, double phi);

  double theta() const;
  double phi() const;
};

inline constexpr BlochDirection kAxisX{1.0, 0.0, 0.0};
inline constexpr BlochDirection kAxisY{0.0, 1.0, 0.0};
inline constexpr BlochDirection kAxisZ{0.0, 0.0, 1.0};

/// Finite point set averaging polynomials of degree <= order exactly.
/// `axes` keeps one point of each antipodal pair; even moments only need those.
struct SphericalDesign {
  int order = 0;
  std::vector<BlochDirection> points;
  std::vector<BlochDirection> axes;
};

/// The six points +-e_i (a 3-design); axes are the three Pauli directions.
const SphericalDesign& pauli_design();
/// The twelve icosahedron vertices (a 5-design); six axes.
const SphericalDesign& icosahedron_design();
/// Design used for moment order t: Pauli axes for t = 2, icosahedron for t = 4.
const SphericalDesign& design_for_moment(int t);

/// Exact sphere average of x^a y^b z^c.
double sphere_monomial_average(int a, int b, int c);
/// Largest deviation between point average and sphere average over all
/// monomials of total degree <= degree.
double design_error(const SphericalDesign& design, int degree);

Eigen::Matrix2cd pauli_along(const BlochDirection& u);

/// Uniform direction on S^2: z uniform in [-1, 1], azimuth uniform in [0, 2pi).
BlochDirection sample_direction(std::mt19937_64& rng);
double uniform_unit(std::mt19937_64& rng);

/// <sigma_u1 (x) ... (x) sigma_uN> for pure GHZ_N, closed form.
double ghz_correlation(std::span<const BlochDirection> setting);

/// Full N-body correlation function. NoisyGhz and BlockProduct use closed
/// forms; dense states are contracted explicitly.
double correlation(const StateModel& state, std::span<const BlochDirection> setting);

/// R^(t) from the design sum over all L^N axis tuples. t must be 2 or 4.
double moment_design(const StateModel& state, int t);

/// R^(t) of the pure GHZ_N state, exact. t must be 2 or 4.
Rational ghz_moment_closed(int n_qubits, int t);

/// (1 - p)^2 R^(2)_GHZ_N.
double noisy_ghz_r2(int n_qubits, double p);

/// R^(4) of Bell^(N/2): 1 / 5^(N/2). N must be even.
Rational bell_product_r4(int n_qubits);

struct MonteCarloMoment {
  double mean = 0.0;
  double std_error = 0.0;
  long samples = 0;
};

/// Haar (uniform-direction) Monte Carlo average of E^t; any t >= 1.
MonteCarloMoment monte_carlo_moment(const StateModel& state, int t, long samples,
                                    std::uint64_t seed);

}  // namespace rmcert
