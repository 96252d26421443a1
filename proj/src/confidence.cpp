#include "rmcert/confidence.hpp"

#include <algorithm>
#include <cmath>

#include "rmcert/errors.hpp"

namespace rmcert {

namespace {

void require_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw ValidationError("confidence level must lie in (0, 1), got " + std::to_string(gamma));
  }
}

void require_mk(long m, long k) {
  if (m < 1) throw ValidationError("number of settings M must be >= 1");
  if (k < 2) throw ValidationError("shots per setting K must be >= 2");
}

void require_variance(double v) {
  if (!(v >= 0.0)) throw ValidationError("variance must be nonnegative");
}

// Root of M d^2 = L (2 v + (2/3) c d) in d.
double bernstein_root(double m, double l, double v, double c) {
  return (c * l / (3.0 * m)) * (1.0 + std::sqrt(1.0 + 18.0 * m * v / (c * c * l)));
}

double bernstein_tail(double m, double v, double c, double delta) {
  return std::exp(-m * delta * delta / (2.0 * v + (2.0 / 3.0) * c * delta));
}

}  // namespace

std::string method_name(ErrorBarMethod method) {
  switch (method) {
    case ErrorBarMethod::CantelliTwoSided:
      return "cantelli";
    case ErrorBarMethod::CantelliOneSided:
      return "cantelli-one-sided";
    case ErrorBarMethod::BernsteinRange:
      return "bernstein";
    case ErrorBarMethod::ChernoffVariance:
      return "chernoff";
    case ErrorBarMethod::BernsteinVariance:
      return "bernstein-variance";
  }
  return "unknown";
}

ErrorBarMethod parse_method(const std::string& text) {
  for (auto m : {ErrorBarMethod::CantelliTwoSided, ErrorBarMethod::CantelliOneSided,
                 ErrorBarMethod::BernsteinRange, ErrorBarMethod::ChernoffVariance,
                 ErrorBarMethod::BernsteinVariance}) {
    if (method_name(m) == text) return m;
  }
  throw ValidationError("unknown error-bar method '" + text +
                        "' (cantelli, cantelli-one-sided, bernstein, chernoff, bernstein-variance)");
}

double log_term(double gamma) {
  require_gamma(gamma);
  return std::abs(std::log((1.0 - gamma) / 2.0));
}

double bernstein_variance_cap(long k_shots) {
  if (k_shots < 2) throw ValidationError("shots per setting K must be >= 2");
  const double k = static_cast<double>(k_shots);
  return 2.0 * (k - 1.0) / (k * (2.0 * k - 3.0));
}

double range_constant(long k_shots) {
  if (k_shots < 2) throw ValidationError("shots per setting K must be >= 2");
  return 1.0 + 1.0 / static_cast<double>(k_shots - 1);
}

double cantelli_two_sided(double variance, double gamma) {
  require_gamma(gamma);
  require_variance(variance);
  return std::sqrt((1.0 + gamma) / (1.0 - gamma) * variance);
}

double cantelli_one_sided_tail(double variance, double delta) {
  require_variance(variance);
  if (!(delta > 0.0)) throw ValidationError("one-sided tail needs delta > 0");
  return variance / (variance + delta * delta);
}

double bernstein_error_bar(long m_settings, long k_shots, double gamma) {
  require_mk(m_settings, k_shots);
  return bernstein_root(static_cast<double>(m_settings), log_term(gamma),
                        bernstein_variance_cap(k_shots), range_constant(k_shots));
}

double chernoff_validity_constant(long k_shots, double variance_bound) {
  require_variance(variance_bound);
  return 8.0 * range_constant(k_shots) / variance_bound;
}

ErrorBar chernoff_error_bar(long m_settings, long k_shots, double gamma, double variance_bound) {
  require_mk(m_settings, k_shots);
  require_variance(variance_bound);
  ErrorBar bar;
  bar.method = ErrorBarMethod::ChernoffVariance;
  bar.gamma = gamma;
  const double m = static_cast<double>(m_settings);
  const double delta = std::sqrt(2.0 * log_term(gamma) * variance_bound / m);
  bar.delta = delta;
  if (variance_bound == 0.0) {
    bar.valid = false;
    bar.diagnostics.push_back("zero variance bound: validity condition cannot be met");
    return bar;
  }
  const double need = chernoff_validity_constant(k_shots, variance_bound) / delta;
  if (m >= need) {
    bar.diagnostics.push_back("validity condition M >= 8 mu / (delta V) holds");
    return bar;
  }
  // Smallest eta with M >= 8 mu / (sqrt(eta) delta eta V).
  bar.eta = std::pow(need / m, 2.0 / 3.0);
  bar.delta = std::sqrt(bar.eta) * delta;
  bar.diagnostics.push_back("validity condition failed (M = " + std::to_string(m_settings) +
                            " < " + std::to_string(need) + "); variance bound inflated by eta = " +
                            std::to_string(bar.eta));
  return bar;
}

double bernstein_variance_error_bar(long m_settings, long k_shots, double gamma,
                                    double variance_bound) {
  require_mk(m_settings, k_shots);
  require_variance(variance_bound);
  return bernstein_root(static_cast<double>(m_settings), log_term(gamma), variance_bound,
                        range_constant(k_shots));
}

ErrorBar error_bar(ErrorBarMethod method, long m_settings, long k_shots, double gamma,
                   double variance_bound) {
  require_mk(m_settings, k_shots);
  require_variance(variance_bound);
  ErrorBar bar;
  bar.method = method;
  bar.gamma = gamma;
  switch (method) {
    case ErrorBarMethod::CantelliTwoSided:
    case ErrorBarMethod::CantelliOneSided:
      bar.delta = cantelli_two_sided(variance_bound / static_cast<double>(m_settings), gamma);
      break;
    case ErrorBarMethod::BernsteinRange:
      bar.delta = bernstein_error_bar(m_settings, k_shots, gamma);
      break;
    case ErrorBarMethod::ChernoffVariance:
      return chernoff_error_bar(m_settings, k_shots, gamma, variance_bound);
    case ErrorBarMethod::BernsteinVariance:
      bar.delta = bernstein_variance_error_bar(m_settings, k_shots, gamma, variance_bound);
      break;
  }
  return bar;
}

double one_sided_tail(ErrorBarMethod method, long m_settings, long k_shots, double variance_bound,
                      double delta) {
  require_mk(m_settings, k_shots);
  require_variance(variance_bound);
  if (!(delta > 0.0)) throw ValidationError("one-sided tail needs delta > 0");
  const double m = static_cast<double>(m_settings);
  switch (method) {
    case ErrorBarMethod::CantelliTwoSided:
    case ErrorBarMethod::CantelliOneSided:
      return cantelli_one_sided_tail(variance_bound / m, delta);
    case ErrorBarMethod::BernsteinRange:
      return bernstein_tail(m, bernstein_variance_cap(k_shots), range_constant(k_shots), delta);
    case ErrorBarMethod::ChernoffVariance: {
      // Inflate the variance bound until the validity condition holds at this delta.
      if (variance_bound == 0.0) return 1.0;
      const double need = chernoff_validity_constant(k_shots, variance_bound) / delta;
      const double eta = std::max(1.0, need / m);
      return std::min(1.0, std::exp(-m * delta * delta / (2.0 * eta * variance_bound)));
    }
    case ErrorBarMethod::BernsteinVariance:
      return bernstein_tail(m, variance_bound, range_constant(k_shots), delta);
  }
  return 1.0;
}

}  // namespace rmcert
