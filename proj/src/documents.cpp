#include "rmcert/documents.hpp"

#include <chrono>
#include <ctime>

namespace rmcert {

using nlohmann::json;

json rational_json(const Rational& r) { return json{{"exact", r.str()}, {"value", r.to_double()}}; }

json criterion_json(const Criterion& c) {
  json j{{"label", c.label()}};
  switch (c.kind) {
    case CriterionKind::FullSep:
      j["kind"] = "fullsep";
      break;
    case CriterionKind::WClass:
      j["kind"] = "wclass";
      break;
    case CriterionKind::KSep:
      j["kind"] = "ksep";
      j["k"] = c.param;
      break;
    case CriterionKind::MProducible:
      j["kind"] = "mprod";
      j["m"] = c.param;
      break;
  }
  return j;
}

json criterion_bound_json(const CriterionBound& b) {
  json j{{"criterion", criterion_json(b.criterion)},
         {"n_qubits", b.n_qubits},
         {"t", b.t},
         {"bound", rational_json(b.value)}};
  if (b.saturating) j["saturating_state"] = describe(StateModel(*b.saturating));
  return j;
}

json error_bar_json(const ErrorBar& bar) {
  return json{{"method", method_name(bar.method)},
              {"gamma", bar.gamma},
              {"delta", bar.delta},
              {"valid", bar.valid},
              {"eta", bar.eta},
              {"diagnostics", bar.diagnostics}};
}

json plan_document(const BudgetPlan& plan) {
  json j{{"n_qubits", plan.n_qubits},
         {"gamma", plan.gamma},
         {"method", method_name(plan.method)},
         {"delta", plan.delta},
         {"k_shots", plan.k_shots},
         {"m_settings", plan.m_settings},
         {"m_total", plan.m_total},
         {"variance_bound", plan.variance_bound},
         {"assumptions", plan.assumptions},
         {"warnings", plan.warnings}};
  if (plan.criterion) {
    j["criterion"] = criterion_json(*plan.criterion);
    j["target_r2"] = plan.target_r2;
    j["bound_r2"] = plan.bound_r2;
    j["tail"] = plan.achieved;
  } else {
    j["criterion"] = nullptr;
    j["delta_rel"] = plan.delta_rel;
    j["achieved_delta"] = plan.achieved;
  }
  return j;
}

json estimate_document(const MomentEstimate& e) {
  json j{{"t", e.t},
         {"n_qubits", e.n_qubits},
         {"value", e.value},
         {"m_settings", e.m_settings},
         {"k_shots", e.k_shots},
         {"variance_estimate", e.variance_estimate},
         {"variance_is_plugin", e.variance_is_plugin}};
  j["error_bar"] = e.error_bar ? error_bar_json(*e.error_bar) : json(nullptr);
  return j;
}

json verdict_json(const Verdict& v) {
  json j{{"criterion", criterion_bound_json(v.criterion)},
         {"observed", v.observed},
         {"bound", rational_json(v.bound)},
         {"delta_obs", v.delta_obs},
         {"method", method_name(v.method)},
         {"gamma", v.gamma},
         {"variance_bound", v.variance_bound},
         {"tail", v.tail},
         {"confidence", v.confidence},
         {"verdict", verdict_name(v.verdict)},
         {"assumptions", v.assumptions},
         {"warnings", v.warnings}};
  j["depth_at_least"] = v.depth ? json(*v.depth) : json(nullptr);
  return j;
}

json certification_document(const CertificationReport& r) {
  json verdicts = json::array();
  for (const auto& v : r.verdicts) verdicts.push_back(verdict_json(v));
  json j{{"n_qubits", r.n_qubits},
         {"gamma", r.gamma},
         {"method", method_name(r.method)},
         {"estimate", estimate_document(r.estimate)},
         {"verdicts", std::move(verdicts)},
         {"notes", r.notes}};
  j["summary_depth_at_least"] = r.summary_depth ? json(*r.summary_depth) : json(nullptr);
  return j;
}

void stamp(json& doc, const std::string& kind, bool reproducible) {
  doc["document"] = kind;
  doc["schema_version"] = kDocumentSchemaVersion;
  if (reproducible) return;
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  doc["generated_at"] = buf;
}

std::string render(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace rmcert
