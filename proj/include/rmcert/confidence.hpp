#pragma once

#include <string>
#include <vector>

namespace rmcert {

enum class ErrorBarMethod {
  CantelliTwoSided,
  CantelliOneSided,
  BernsteinRange,
  ChernoffVariance,
  BernsteinVariance,
};

/// "cantelli", "cantelli-one-sided", "bernstein", "chernoff", "bernstein-variance".
std::string method_name(ErrorBarMethod method);
ErrorBarMethod parse_method(const std::string& text);

struct ErrorBar {
  ErrorBarMethod method = ErrorBarMethod::CantelliTwoSided;
  double gamma = 0.9;
  double delta = 0.0;
  bool valid = true;
  /// Chernoff only: factor applied to the variance bound to restore validity.
  double eta = 1.0;
  std::vector<std::string> diagnostics;
};

/// |ln((1 - gamma) / 2)|.
double log_term(double gamma);

/// Per-setting variance cap of the R^(2) estimator used by the range-based
/// Bernstein bound: 2(K-1) / (K(2K-3)).
double bernstein_variance_cap(long k_shots);

/// 1 + 1/(K-1): largest deviation of a single-setting estimate from its mean.
double range_constant(long k_shots);

/// sqrt((1+gamma)/(1-gamma) * variance), variance being that of the estimator.
double cantelli_two_sided(double variance, double gamma);

/// Var / (Var + delta^2).
double cantelli_one_sided_tail(double variance, double delta);

double bernstein_error_bar(long m_settings, long k_shots, double gamma);

/// sqrt(2 L V / M) with V the per-setting variance bound. When M is below the
/// validity threshold the bound is inflated by the smallest admissible eta.
ErrorBar chernoff_error_bar(long m_settings, long k_shots, double gamma, double variance_bound);

/// M must satisfy M >= chernoff_validity_constant(K, V) / delta.
double chernoff_validity_constant(long k_shots, double variance_bound);

double bernstein_variance_error_bar(long m_settings, long k_shots, double gamma,
                                    double variance_bound);

/// Two-sided bar for any method; variance_bound is per setting, so Cantelli
/// uses variance_bound / M.
ErrorBar error_bar(ErrorBarMethod method, long m_settings, long k_shots, double gamma,
                   double variance_bound);

/// Upper bound on P(estimate - mean >= delta) for the method's one-sided
/// inequality. Both Cantelli variants use the one-sided Cantelli form.
double one_sided_tail(ErrorBarMethod method, long m_settings, long k_shots, double variance_bound,
                      double delta);

}  // namespace rmcert
