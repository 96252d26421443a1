#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rmcert/bounds.hpp"
#include "rmcert/confidence.hpp"
#include "rmcert/rational.hpp"

namespace rmcert {

/// Shot count K and number y of outcomes with correlation sample +1.
struct SettingStats {
  long k_shots = 0;
  long y = 0;
};

/// Product of the selected outcomes (all of them when no subset is given).
int correlation_sample(std::span<const int> outcomes,
                       std::optional<std::span<const std::size_t>> subset = std::nullopt);

/// Y(Y-1)...(Y-k+1) / [K(K-1)...(K-k+1)], unbiased for P^k.
double p_hat_k(const SettingStats& stats, int k);
Rational p_hat_k_exact(const SettingStats& stats, int k);

/// (-1)^t sum_k (-2)^k C(t,k) P_k, unbiased for E^t with E = 2P - 1.
double e_hat_t(const SettingStats& stats, int t);
Rational e_hat_t_exact(const SettingStats& stats, int t);

struct MomentEstimate {
  int t = 2;
  int n_qubits = 0;
  double value = 0.0;
  long m_settings = 0;
  long k_shots = 0;
  std::vector<double> per_setting;
  /// Variance of `value`; plug-in for K >= 4, otherwise the upper bound.
  double variance_estimate = 0.0;
  bool variance_is_plugin = false;
  std::optional<ErrorBar> error_bar;
};

/// Averages the per-setting estimators. All records must share K >= t.
MomentEstimate moment_estimate(std::span<const SettingStats> records, int t, int n_qubits);

struct VarianceCoefficients {
  Rational a;
  Rational b;
  Rational c;
};

/// E[E_2^2] = A E^4 + B E^2 + C for fixed setting and K shots.
VarianceCoefficients variance_coefficients(long k_shots);

/// (1/M) [A r4 + B r2 + C - r2^2].
double variance_r2_estimator(double r2, double r4, long m_settings, long k_shots);

struct VarianceBound {
  /// Per-setting bound A r4 + B r2 + C; divide by M for the estimator.
  double value = 0.0;
  std::vector<std::string> assumptions;
  std::vector<std::string> warnings;
};

/// Drops -r2^2 and inserts the moment caps valid under the hypothesis
/// (all states when nullopt).
VarianceBound variance_upper_bound(int n_qubits, long k_shots,
                                   const std::optional<Criterion>& hypothesis = std::nullopt);

/// A, B, C as doubles without going through rationals.
void variance_coefficients_double(long k_shots, double& a, double& b, double& c);

/// Two-sided error bar on an estimate. Cantelli uses the variance estimate;
/// the other methods need the state-independent bound and so only cover R^(2).
void attach_error_bar(MomentEstimate& estimate, ErrorBarMethod method, double gamma);

}  // namespace rmcert
