#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rmcert/bounds.hpp"
#include "rmcert/confidence.hpp"

namespace rmcert {

inline constexpr long kDefaultKCap = 1000000;

struct BudgetPlan {
  int n_qubits = 0;
  /// nullopt for estimate-only plans.
  std::optional<Criterion> criterion;
  double gamma = 0.9;
  double delta = 0.0;
  /// delta as a fraction of R^(2)_GHZ (estimate-only plans).
  double delta_rel = 0.0;
  ErrorBarMethod method = ErrorBarMethod::CantelliTwoSided;
  long k_shots = 2;
  std::int64_t m_settings = 1;
  std::int64_t m_total = 2;
  /// Per-setting variance bound at the chosen K.
  double variance_bound = 0.0;
  /// Forward check: achieved half-width (estimate-only) or one-sided tail (certification).
  double achieved = 0.0;
  /// Certification plans only.
  double target_r2 = 0.0;
  double bound_r2 = 0.0;
  std::vector<std::string> assumptions;
  std::vector<std::string> warnings;
};

/// Smallest M whose two-sided half-width (per method) is <= delta for a
/// per-setting variance bound V.
std::int64_t required_m_for_variance(ErrorBarMethod method, long k_shots, double gamma,
                                     double delta, double variance_bound);

/// Smallest M whose one-sided tail at delta is <= 1 - gamma.
std::int64_t required_m_one_sided(ErrorBarMethod method, long k_shots, double gamma, double delta,
                                  double variance_bound);

/// M for delta = delta_rel * R^(2)_GHZ_N with the state-independent variance bound.
std::int64_t required_m(int n_qubits, long k_shots, double gamma, double delta_rel,
                        ErrorBarMethod method);

/// Continuous minimizer of M(K) * K for the Cantelli budget.
double optimal_k(int n_qubits);

BudgetPlan min_total_budget(int n_qubits, double gamma, double delta_rel, ErrorBarMethod method,
                            long k_cap = kDefaultKCap);

/// Budget for observing target_r2 above the criterion's bound with confidence
/// gamma, using the variance bound valid under the criterion.
BudgetPlan certification_budget(int n_qubits, const Criterion& criterion, double target_r2,
                                double gamma,
                                ErrorBarMethod method = ErrorBarMethod::CantelliOneSided,
                                long k_cap = kDefaultKCap);

}  // namespace rmcert
