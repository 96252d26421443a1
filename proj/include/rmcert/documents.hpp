#pragma once

#include <string>

#include <json.hpp>

#include "rmcert/bounds.hpp"
#include "rmcert/certify.hpp"
#include "rmcert/estimation.hpp"
#include "rmcert/planner.hpp"
#include "rmcert/rational.hpp"

namespace rmcert {

inline constexpr int kDocumentSchemaVersion = 1;

/// {"exact": "num/den", "value": nearest double}
nlohmann::json rational_json(const Rational& r);

nlohmann::json criterion_json(const Criterion& c);
nlohmann::json criterion_bound_json(const CriterionBound& b);
nlohmann::json error_bar_json(const ErrorBar& bar);
nlohmann::json plan_document(const BudgetPlan& plan);
nlohmann::json estimate_document(const MomentEstimate& estimate);
nlohmann::json verdict_json(const Verdict& v);
nlohmann::json certification_document(const CertificationReport& report);

/// Adds "schema_version" and, unless reproducible, a UTC "generated_at" field.
void stamp(nlohmann::json& doc, const std::string& kind, bool reproducible);

/// Two-space indented rendering followed by a newline.
std::string render(const nlohmann::json& doc);

}  // namespace rmcert
