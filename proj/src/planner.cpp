#include "rmcert/planner.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "rmcert/errors.hpp"
#include "rmcert/estimation.hpp"
#include "rmcert/moments.hpp"

namespace rmcert {

namespace {

constexpr std::int64_t kMaxSettings = std::int64_t{1} << 60;

void require_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ValidationError("confidence level must lie in (0, 1)");
}

void require_delta(double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ValidationError("target delta must be > 0");
}

// Smallest M >= 1 with ok(M), given a monotone predicate and a starting guess.
std::int64_t smallest_m(double guess, const std::function<bool(std::int64_t)>& ok) {
  if (!(guess < static_cast<double>(kMaxSettings))) {
    throw InfeasibleError("required number of settings exceeds 2^60");
  }
  std::int64_t g = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(guess)));
  std::int64_t lo = 0, hi = 0;  // ok(hi) holds, ok(lo) fails (lo = 0 stands for "none")
  if (ok(g)) {
    hi = g;
    lo = g - 1;
    while (lo > 0 && ok(lo)) {
      hi = lo;
      lo = lo / 2;
    }
  } else {
    lo = g;
    hi = g + 1;
    while (!ok(hi)) {
      lo = hi;
      if (hi > kMaxSettings / 2) throw InfeasibleError("required number of settings exceeds 2^60");
      hi *= 2;
    }
  }
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

double two_sided_guess(ErrorBarMethod method, long k, double gamma, double delta, double v) {
  const double l = log_term(gamma);
  switch (method) {
    case ErrorBarMethod::CantelliTwoSided:
    case ErrorBarMethod::CantelliOneSided:
      return (1.0 + gamma) / (1.0 - gamma) * v / (delta * delta);
    case ErrorBarMethod::BernsteinRange:
      return l * (2.0 * bernstein_variance_cap(k) + (2.0 / 3.0) * range_constant(k) * delta) /
             (delta * delta);
    case ErrorBarMethod::ChernoffVariance:
      return 2.0 * l * v / (delta * delta);
    case ErrorBarMethod::BernsteinVariance:
      return l * (2.0 * v + (2.0 / 3.0) * range_constant(k) * delta) / (delta * delta);
  }
  return 1.0;
}

double one_sided_guess(ErrorBarMethod method, long k, double gamma, double delta, double v) {
  const double l = -std::log(1.0 - gamma);
  switch (method) {
    case ErrorBarMethod::CantelliTwoSided:
    case ErrorBarMethod::CantelliOneSided:
      return gamma / (1.0 - gamma) * v / (delta * delta);
    case ErrorBarMethod::BernsteinRange:
      return l * (2.0 * bernstein_variance_cap(k) + (2.0 / 3.0) * range_constant(k) * delta) /
             (delta * delta);
    case ErrorBarMethod::ChernoffVariance:
      return 2.0 * l * v / (delta * delta);
    case ErrorBarMethod::BernsteinVariance:
      return l * (2.0 * v + (2.0 / 3.0) * range_constant(k) * delta) / (delta * delta);
  }
  return 1.0;
}

struct KScanResult {
  long k = 0;
  std::int64_t m = 0;
  double variance = 0.0;
};

// Minimizes M(K) * K over K in [2, k_cap]. lower(K) bounds M(K') from below for all K' >= K,
// which ends the scan once K * lower(K) exceeds the best total.
KScanResult scan_k(long k_cap, const std::function<double(long)>& variance,
                   const std::function<std::int64_t(long, double)>& m_of,
                   const std::function<double(long)>& lower) {
  if (k_cap < 2) throw ValidationError("K cap must be >= 2");
  KScanResult best;
  double best_total = std::numeric_limits<double>::infinity();
  for (long k = 2; k <= k_cap; ++k) {
    const double v = variance(k);
    std::int64_t m = 0;
    try {
      m = m_of(k, v);
    } catch (const InfeasibleError&) {
      continue;
    }
    const double total = static_cast<double>(m) * static_cast<double>(k);
    if (total < best_total) {
      best_total = total;
      best = {k, m, v};
    }
    if (static_cast<double>(k) * lower(k) > best_total) break;
  }
  if (best.k == 0) throw InfeasibleError("no K in [2, " + std::to_string(k_cap) + "] gives a feasible budget");
  return best;
}

double coefficient_a(long k) {
  double a = 0.0, b = 0.0, c = 0.0;
  variance_coefficients_double(k, a, b, c);
  return a;
}

}  // namespace

std::int64_t required_m_for_variance(ErrorBarMethod method, long k_shots, double gamma,
                                     double delta, double variance_bound) {
  require_gamma(gamma);
  require_delta(delta);
  const double guess = two_sided_guess(method, k_shots, gamma, delta, variance_bound);
  return smallest_m(guess, [&](std::int64_t m) {
    return error_bar(method, static_cast<long>(m), k_shots, gamma, variance_bound).delta <= delta;
  });
}

std::int64_t required_m_one_sided(ErrorBarMethod method, long k_shots, double gamma, double delta,
                                  double variance_bound) {
  require_gamma(gamma);
  require_delta(delta);
  const double guess = one_sided_guess(method, k_shots, gamma, delta, variance_bound);
  return smallest_m(guess, [&](std::int64_t m) {
    return one_sided_tail(method, static_cast<long>(m), k_shots, variance_bound, delta) <=
           1.0 - gamma;
  });
}

std::int64_t required_m(int n_qubits, long k_shots, double gamma, double delta_rel,
                        ErrorBarMethod method) {
  require_delta(delta_rel);
  const double delta = delta_rel * ghz_moment_closed(n_qubits, 2).to_double();
  const double v = variance_upper_bound(n_qubits, k_shots).value;
  return required_m_for_variance(method, k_shots, gamma, delta, v);
}

double optimal_k(int n_qubits) {
  if (n_qubits < 2) throw ValidationError("optimal K needs N >= 2");
  const double n = n_qubits;
  const double p5 = std::pow(5.0, n), p2 = std::pow(2.0, n), p3 = std::pow(3.0, n),
               p8 = std::pow(8.0, n);
  // Rewritten as 1 + sqrt(2) sqrt(1 + 8 5^N (3^N - 2^N - 2) / D) to avoid cancellation.
  const double d = 3.0 * std::pow(2.0, n + 3.0) + 8.0 * p3 + 3.0 * p8;
  return 1.0 + std::sqrt(2.0) * std::sqrt(1.0 + 8.0 * p5 * (p3 - p2 - 2.0) / d);
}

BudgetPlan min_total_budget(int n_qubits, double gamma, double delta_rel, ErrorBarMethod method,
                            long k_cap) {
  require_gamma(gamma);
  require_delta(delta_rel);
  const HypothesisCaps caps = hypothesis_caps(n_qubits, std::nullopt);
  const double r2 = caps.r2.to_double();
  const double r4 = caps.r4.to_double();
  const double delta = delta_rel * r2;
  auto variance = [&](long k) {
    double a = 0.0, b = 0.0, c = 0.0;
    variance_coefficients_double(k, a, b, c);
    return a * r4 + b * r2 + c;
  };
  auto m_of = [&](long k, double v) {
    return required_m_for_variance(method, k, gamma, delta, v);
  };
  auto lower = [&](long k) {
    if (method == ErrorBarMethod::BernsteinRange) return (2.0 / 3.0) * log_term(gamma) / delta;
    // The variance-Bernstein budget is never below the Chernoff one.
    const auto base =
        method == ErrorBarMethod::BernsteinVariance ? ErrorBarMethod::ChernoffVariance : method;
    return two_sided_guess(base, k, gamma, delta, coefficient_a(k) * r4);
  };
  const KScanResult best = scan_k(k_cap, variance, m_of, lower);

  BudgetPlan plan;
  plan.n_qubits = n_qubits;
  plan.gamma = gamma;
  plan.delta = delta;
  plan.delta_rel = delta_rel;
  plan.method = method;
  plan.k_shots = best.k;
  plan.m_settings = best.m;
  plan.m_total = best.m * best.k;
  plan.variance_bound = best.variance;
  plan.achieved = error_bar(method, static_cast<long>(best.m), best.k, gamma, best.variance).delta;
  plan.assumptions = caps.assumptions;
  plan.warnings = caps.warnings;
  return plan;
}

BudgetPlan certification_budget(int n_qubits, const Criterion& criterion, double target_r2,
                                double gamma, ErrorBarMethod method, long k_cap) {
  require_gamma(gamma);
  const Rational bound = criterion_bound_r2(n_qubits, criterion);
  const double bound_d = bound.to_double();
  if (!(target_r2 > bound_d)) {
    throw InfeasibleError("criterion not violated by target state: R^(2) = " +
                          std::to_string(target_r2) + " <= bound " + bound.str() + " of " +
                          criterion.label());
  }
  const double delta = target_r2 - bound_d;
  const HypothesisCaps caps = hypothesis_caps(n_qubits, criterion);
  const double r2 = caps.r2.to_double();
  const double r4 = caps.r4.to_double();
  auto variance = [&](long k) {
    double a = 0.0, b = 0.0, c = 0.0;
    variance_coefficients_double(k, a, b, c);
    return a * r4 + b * r2 + c;
  };
  auto m_of = [&](long k, double v) {
    return required_m_one_sided(method, k, gamma, delta, v);
  };
  auto lower = [&](long k) {
    if (method == ErrorBarMethod::BernsteinRange) {
      return (2.0 / 3.0) * -std::log(1.0 - gamma) / delta;
    }
    const auto base =
        method == ErrorBarMethod::BernsteinVariance ? ErrorBarMethod::ChernoffVariance : method;
    return one_sided_guess(base, k, gamma, delta, coefficient_a(k) * r4);
  };
  const KScanResult best = scan_k(k_cap, variance, m_of, lower);

  BudgetPlan plan;
  plan.n_qubits = n_qubits;
  plan.criterion = criterion;
  plan.gamma = gamma;
  plan.delta = delta;
  plan.method = method;
  plan.k_shots = best.k;
  plan.m_settings = best.m;
  plan.m_total = best.m * best.k;
  plan.variance_bound = best.variance;
  plan.achieved = one_sided_tail(method, static_cast<long>(best.m), best.k, best.variance, delta);
  plan.target_r2 = target_r2;
  plan.bound_r2 = bound_d;
  plan.assumptions = caps.assumptions;
  plan.warnings = caps.warnings;
  return plan;
}

}  // namespace rmcert
