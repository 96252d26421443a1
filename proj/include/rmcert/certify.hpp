#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rmcert/bounds.hpp"
#include "rmcert/confidence.hpp"
#include "rmcert/estimation.hpp"
#include "rmcert/sampling.hpp"

namespace rmcert {

enum class VerdictKind { Violated, NotViolated, Inconclusive };

std::string verdict_name(VerdictKind kind);

struct Verdict {
  CriterionBound criterion;
  double observed = 0.0;
  Rational bound;
  double bound_value = 0.0;
  /// observed - bound
  double delta_obs = 0.0;
  ErrorBarMethod method = ErrorBarMethod::CantelliOneSided;
  double gamma = 0.9;
  /// Per-setting variance bound under the criterion.
  double variance_bound = 0.0;
  double tail = 1.0;
  /// 1 - tail when delta_obs > 0, otherwise 0.
  double confidence = 0.0;
  VerdictKind verdict = VerdictKind::NotViolated;
  std::optional<int> depth;
  std::vector<std::string> assumptions;
  std::vector<std::string> warnings;
};

/// Tests the R^(2) estimate against one criterion, with the variance bounded
/// under the criterion itself.
Verdict test_criterion(const MomentEstimate& estimate, const Criterion& criterion, double gamma,
                       ErrorBarMethod method = ErrorBarMethod::CantelliOneSided);

struct CertificationReport {
  int n_qubits = 0;
  double gamma = 0.9;
  ErrorBarMethod method = ErrorBarMethod::CantelliOneSided;
  MomentEstimate estimate;
  /// Sorted by bound, largest (hardest to violate) first.
  std::vector<Verdict> verdicts;
  /// Largest depth implied by any violated criterion.
  std::optional<int> summary_depth;
  std::vector<std::string> notes;
};

CertificationReport certify_all(std::span<const SettingStats> records, int n_qubits, double gamma,
                                ErrorBarMethod method = ErrorBarMethod::CantelliOneSided);
CertificationReport certify_all(std::span<const ShotRecord> records, double gamma,
                                ErrorBarMethod method = ErrorBarMethod::CantelliOneSided);

}  // namespace rmcert
