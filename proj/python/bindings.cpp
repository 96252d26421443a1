#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rmcert/bounds.hpp"
#include "rmcert/certify.hpp"
#include "rmcert/documents.hpp"
#include "rmcert/errors.hpp"
#include "rmcert/moments.hpp"
#include "rmcert/planner.hpp"
#include "rmcert/records.hpp"
#include "rmcert/sampling.hpp"

namespace py = pybind11;
using namespace rmcert;

namespace {

RecordFile parse_records(const std::string& text) {
  std::istringstream in(text);
  return read_records(in);
}

std::string document(nlohmann::json doc, const std::string& kind) {
  stamp(doc, kind, true);
  return doc.dump();
}

}  // namespace

PYBIND11_MODULE(_rmcert, m) {
  m.doc() = "Bindings for the rmcert core library; rmcert/__init__.py wraps them.";

  auto base = py::register_exception<Error>(m, "RmcertError", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
  py::register_exception<IngestionError>(m, "IngestionError", base.ptr());
  py::register_exception<InfeasibleError>(m, "InfeasibleError", base.ptr());

  m.def("ghz_moment", [](int n, int t) { return ghz_moment_closed(n, t).str(); }, py::arg("n"), py::arg("t"));
  m.def(
      "criterion_bound",
      [](int n, const std::string& criterion, int t) { return criterion_bound(n, parse_criterion(criterion), t).value.str(); },
      py::arg("n"), py::arg("criterion"), py::arg("t") = 2);
  m.def(
      "mprod_bound",
      [](int n, int mm) {
        const auto b = mprod_bound_r2(n, mm);
        return py::make_tuple(b.value.str(), b.assignment);
      },
      py::arg("n"), py::arg("m"));
  m.def("applicable_criteria", [](int n) {
    std::vector<std::string> out;
    for (const auto& c : applicable_criteria(n)) out.push_back(c.label());
    return out;
  });
  m.def("noise_threshold", &noise_threshold, py::arg("n"), py::arg("k"));
  m.def("noise_threshold_asymptotic", &noise_threshold_asymptotic, py::arg("k"));
  m.def("fidelity_to_p", &fidelity_to_p, py::arg("n"), py::arg("fidelity"));
  m.def("noisy_ghz_r2", &noisy_ghz_r2, py::arg("n"), py::arg("p"));
  m.def(
      "moment_design",
      [](const std::string& state, int t) { return moment_design(parse_state_descriptor(state), t); },
      py::arg("state"), py::arg("t"));

  m.def(
      "min_total_budget",
      [](int n, double gamma, double delta_rel, const std::string& method) {
        return document(plan_document(min_total_budget(n, gamma, delta_rel, parse_method(method))), "plan");
      },
      py::arg("n"), py::arg("gamma"), py::arg("delta_rel"), py::arg("method"));
  m.def(
      "certification_budget",
      [](int n, const std::string& criterion, double target, double gamma, const std::string& method) {
        return document(
            plan_document(certification_budget(n, parse_criterion(criterion), target, gamma, parse_method(method))),
            "plan");
      },
      py::arg("n"), py::arg("criterion"), py::arg("target_r2"), py::arg("gamma"), py::arg("method"));

  m.def(
      "simulate",
      [](const std::string& state_text, long m_settings, long k_shots, std::uint64_t seed, const std::string& mode,
         unsigned threads) {
        const StateModel state = parse_state_descriptor(state_text);
        ExperimentOptions opt;
        opt.m_settings = m_settings;
        opt.k_shots = k_shots;
        opt.seed = seed;
        opt.mode = parse_mode(mode);
        opt.threads = threads;
        std::vector<ShotRecord> records;
        {
          py::gil_scoped_release release;
          records = run_experiment(state, opt);
        }
        RecordHeader header{kRecordFormatVersion, n_qubits(state), k_shots, opt.mode, seed, describe(state)};
        std::ostringstream out;
        write_records(out, header, records);
        return out.str();
      },
      py::arg("state"), py::arg("m"), py::arg("k"), py::arg("seed"), py::arg("mode"), py::arg("threads"));
  m.def(
      "estimate",
      [](const std::string& text, int t, double gamma, const std::string& method) {
        const auto file = parse_records(text);
        auto est = moment_estimate(to_stats(file.records), t, file.header.n_qubits);
        attach_error_bar(est, parse_method(method), gamma);
        return document(estimate_document(est), "estimate");
      },
      py::arg("records"), py::arg("t"), py::arg("gamma"), py::arg("method"));
  m.def(
      "certify",
      [](const std::string& text, double gamma, const std::string& method) {
        const auto file = parse_records(text);
        return document(certification_document(certify_all(file.records, gamma, parse_method(method))),
                        "certification");
      },
      py::arg("records"), py::arg("gamma"), py::arg("method"));
}
