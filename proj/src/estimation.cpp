#include "rmcert/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rmcert/errors.hpp"

namespace rmcert {

namespace {

void require_stats(const SettingStats& s, int order) {
  if (order < 0) throw ValidationError("order must be nonnegative");
  if (s.k_shots < 1) throw ValidationError("shots per setting K must be >= 1");
  if (s.y < 0 || s.y > s.k_shots) {
    throw ValidationError("count y = " + std::to_string(s.y) + " outside [0, K = " +
                          std::to_string(s.k_shots) + "]");
  }
  if (s.k_shots < order) {
    throw ValidationError("insufficient shots for order " + std::to_string(order) + " (K = " +
                          std::to_string(s.k_shots) + ")");
  }
}

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

int correlation_sample(std::span<const int> outcomes,
                       std::optional<std::span<const std::size_t>> subset) {
  auto check = [](int r) {
    if (r != 1 && r != -1) throw ValidationError("outcomes must be +1 or -1");
    return r;
  };
  int x = 1;
  if (!subset) {
    for (int r : outcomes) x *= check(r);
    return x;
  }
  std::vector<bool> seen(outcomes.size(), false);
  for (std::size_t i : *subset) {
    if (i >= outcomes.size()) {
      throw ValidationError("subset index " + std::to_string(i) + " out of range for N = " +
                            std::to_string(outcomes.size()));
    }
    if (seen[i]) throw ValidationError("subset index " + std::to_string(i) + " repeated");
    seen[i] = true;
    x *= check(outcomes[i]);
  }
  return x;
}

double p_hat_k(const SettingStats& stats, int k) {
  require_stats(stats, k);
  double r = 1.0;
  for (int j = 0; j < k; ++j) {
    r *= static_cast<double>(stats.y - j) / static_cast<double>(stats.k_shots - j);
  }
  return r;
}

Rational p_hat_k_exact(const SettingStats& stats, int k) {
  require_stats(stats, k);
  Rational r(1);
  for (int j = 0; j < k; ++j) r *= Rational(stats.y - j, stats.k_shots - j);
  return r;
}

double e_hat_t(const SettingStats& stats, int t) {
  require_stats(stats, t);
  double sum = 0.0;
  double pk = 1.0;
  double pow2 = 1.0;
  for (int k = 0; k <= t; ++k) {
    if (k > 0) {
      pk *= static_cast<double>(stats.y - (k - 1)) / static_cast<double>(stats.k_shots - (k - 1));
      pow2 *= -2.0;
    }
    sum += pow2 * static_cast<double>(binomial(t, k)) * pk;
  }
  return t % 2 == 0 ? sum : -sum;
}

Rational e_hat_t_exact(const SettingStats& stats, int t) {
  require_stats(stats, t);
  Rational sum(0);
  for (int k = 0; k <= t; ++k) {
    Rational term = p_hat_k_exact(stats, k) * Rational(binomial(t, k));
    term *= Rational::power(-2, static_cast<unsigned long>(k));
    sum += term;
  }
  return t % 2 == 0 ? sum : -sum;
}

MomentEstimate moment_estimate(std::span<const SettingStats> records, int t, int n_qubits) {
  if (records.empty()) throw ValidationError("no records to estimate from");
  if (t != 2 && t != 4) throw ValidationError("moment order must be 2 or 4");
  const long k = records.front().k_shots;
  for (const auto& r : records) {
    if (r.k_shots != k) {
      throw ValidationError("records mix K = " + std::to_string(k) + " and K = " +
                            std::to_string(r.k_shots) + "; a single K is required");
    }
  }
  if (k < std::max(t, 2)) {
    throw ValidationError("insufficient shots for order " + std::to_string(t) + " (K = " +
                          std::to_string(k) + ")");
  }

  MomentEstimate est;
  est.t = t;
  est.n_qubits = n_qubits;
  est.m_settings = static_cast<long>(records.size());
  est.k_shots = k;
  est.per_setting.reserve(records.size());
  for (const auto& r : records) est.per_setting.push_back(e_hat_t(r, t));
  const double m = static_cast<double>(est.m_settings);
  est.value = std::accumulate(est.per_setting.begin(), est.per_setting.end(), 0.0) / m;

  if (t == 2) {
    if (k >= 4) {
      double r4 = 0.0;
      for (const auto& r : records) r4 += e_hat_t(r, 4);
      r4 /= m;
      est.variance_estimate = std::max(
          0.0, variance_r2_estimator(std::max(est.value, 0.0), std::max(r4, 0.0), est.m_settings, k));
      est.variance_is_plugin = true;
    } else {
      est.variance_estimate = variance_upper_bound(n_qubits, k).value / m;
    }
  } else if (est.m_settings > 1) {
    double ss = 0.0;
    for (double v : est.per_setting) ss += (v - est.value) * (v - est.value);
    est.variance_estimate = ss / (m - 1.0) / m;
    est.variance_is_plugin = true;
  }
  return est;
}

VarianceCoefficients variance_coefficients(long k_shots) {
  if (k_shots < 2) throw ValidationError("variance coefficients need K >= 2");
  const Rational k(k_shots);
  const Rational km1(k_shots - 1);
  VarianceCoefficients c;
  c.a = k / km1 - Rational(5) / km1 + Rational(6) / (km1 * k);
  c.b = Rational(4) / km1 - Rational(8) / (km1 * k);
  c.c = Rational(2) / (k * km1);
  return c;
}

void variance_coefficients_double(long k_shots, double& a, double& b, double& c) {
  if (k_shots < 2) throw ValidationError("variance coefficients need K >= 2");
  const double k = static_cast<double>(k_shots);
  a = (k - 2.0) * (k - 3.0) / (k * (k - 1.0));
  b = 4.0 / (k - 1.0) - 8.0 / ((k - 1.0) * k);
  c = 2.0 / (k * (k - 1.0));
}

double variance_r2_estimator(double r2, double r4, long m_settings, long k_shots) {
  if (m_settings < 1) throw ValidationError("number of settings M must be >= 1");
  double a = 0.0, b = 0.0, c = 0.0;
  variance_coefficients_double(k_shots, a, b, c);
  return (a * r4 + b * r2 + c - r2 * r2) / static_cast<double>(m_settings);
}

VarianceBound variance_upper_bound(int n_qubits, long k_shots,
                                   const std::optional<Criterion>& hypothesis) {
  const HypothesisCaps caps = hypothesis_caps(n_qubits, hypothesis);
  double a = 0.0, b = 0.0, c = 0.0;
  variance_coefficients_double(k_shots, a, b, c);
  VarianceBound out;
  out.value = a * caps.r4.to_double() + b * caps.r2.to_double() + c;
  out.assumptions = caps.assumptions;
  out.warnings = caps.warnings;
  return out;
}

void attach_error_bar(MomentEstimate& estimate, ErrorBarMethod method, double gamma) {
  if (method == ErrorBarMethod::CantelliOneSided) method = ErrorBarMethod::CantelliTwoSided;
  const long m = estimate.m_settings;
  double per_setting = 0.0;
  if (method == ErrorBarMethod::CantelliTwoSided) {
    per_setting = estimate.variance_estimate * static_cast<double>(m);
  } else {
    if (estimate.t != 2) {
      throw ValidationError("method " + method_name(method) + " needs a variance bound, available for t = 2 only");
    }
    per_setting = variance_upper_bound(estimate.n_qubits, estimate.k_shots).value;
  }
  estimate.error_bar = error_bar(method, m, estimate.k_shots, gamma, per_setting);
}

}  // namespace rmcert
