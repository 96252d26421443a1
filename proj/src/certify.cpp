#include "rmcert/certify.hpp"

#include <algorithm>

#include "rmcert/errors.hpp"

namespace rmcert {

std::string verdict_name(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Violated:
      return "violated";
    case VerdictKind::NotViolated:
      return "not_violated";
    case VerdictKind::Inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

Verdict test_criterion(const MomentEstimate& estimate, const Criterion& criterion, double gamma,
                       ErrorBarMethod method) {
  if (estimate.t != 2) throw ValidationError("criteria are tested on the second moment only");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ValidationError("confidence level must lie in (0, 1)");
  const int n = estimate.n_qubits;
  if (criterion.kind == CriterionKind::KSep && n <= 4) {
    throw ValidationError(
        "k-separability criteria are inapplicable for N = " + std::to_string(n) +
        ": the 2-separable bound equals the GHZ maximum at N = 4, so GME detection is only "
        "possible for N > 4");
  }
  Verdict v;
  v.criterion = criterion_bound(n, criterion, 2);
  v.observed = estimate.value;
  v.bound = v.criterion.value;
  v.bound_value = v.bound.to_double();
  v.delta_obs = v.observed - v.bound_value;
  v.method = method;
  v.gamma = gamma;
  const VarianceBound vb = variance_upper_bound(n, estimate.k_shots, criterion);
  v.variance_bound = vb.value;
  v.assumptions = vb.assumptions;
  v.warnings = vb.warnings;
  if (v.delta_obs <= 0.0) {
    v.tail = 1.0;
    v.confidence = 0.0;
    v.verdict = VerdictKind::NotViolated;
    return v;
  }
  v.tail = one_sided_tail(method, estimate.m_settings, estimate.k_shots, v.variance_bound, v.delta_obs);
  v.confidence = 1.0 - v.tail;
  v.verdict = v.confidence >= gamma ? VerdictKind::Violated : VerdictKind::Inconclusive;
  if (v.verdict == VerdictKind::Violated && criterion.kind != CriterionKind::WClass) {
    v.depth = depth_implication(n, criterion);
  }
  return v;
}

CertificationReport certify_all(std::span<const SettingStats> records, int n_qubits, double gamma,
                                ErrorBarMethod method) {
  CertificationReport report;
  report.n_qubits = n_qubits;
  report.gamma = gamma;
  report.method = method;
  report.estimate = moment_estimate(records, 2, n_qubits);
  attach_error_bar(report.estimate, method, gamma);

  for (const auto& c : applicable_criteria(n_qubits)) {
    report.verdicts.push_back(test_criterion(report.estimate, c, gamma, method));
  }
  std::stable_sort(report.verdicts.begin(), report.verdicts.end(),
                   [](const Verdict& a, const Verdict& b) { return a.bound > b.bound; });
  for (const auto& v : report.verdicts) {
    if (v.depth && (!report.summary_depth || *v.depth > *report.summary_depth)) {
      report.summary_depth = v.depth;
    }
  }
  if (n_qubits <= 4) {
    report.notes.push_back("no k-separability criteria: GME detection is only possible for N > 4");
  }
  return report;
}

CertificationReport certify_all(std::span<const ShotRecord> records, double gamma,
                                ErrorBarMethod method) {
  if (records.empty()) throw ValidationError("no records to certify");
  const int n = records.front().n_qubits();
  const auto stats = to_stats(records);
  return certify_all(stats, n, gamma, method);
}

}  // namespace rmcert
