#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rmcert/bounds.hpp"
#include "rmcert/certify.hpp"
#include "rmcert/documents.hpp"
#include "rmcert/errors.hpp"
#include "rmcert/moments.hpp"
#include "rmcert/planner.hpp"
#include "rmcert/records.hpp"
#include "rmcert/sampling.hpp"

using nlohmann::json;
using namespace rmcert;

namespace {

enum ExitCode : int {
  kOk = 0,
  kInternal = 1,
  kUsage = 2,
  kValidation = 3,
  kResource = 4,
  kIngestion = 5,
  kInfeasible = 6,
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  bool reproducible = false;
  bool csv = false;
  unsigned threads = 0;
  std::string out;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  std::vector<std::string> warnings;
};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return v.dump();
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : s) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    return quoted + "\"";
  }
  return s;
}

void write_text(const GlobalOptions& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw ValidationError("cannot open output file '" + g.out + "'");
  f << text;
}

void emit_document(const GlobalOptions& g, json doc, const std::string& kind) {
  stamp(doc, kind, g.reproducible);
  write_text(g, render(doc));
}

void emit_table(const GlobalOptions& g, const Table& t, const std::string& kind) {
  for (const auto& w : t.warnings) std::cerr << "warning: " << w << "\n";
  if (g.csv) {
    std::ostringstream out;
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << "\n";
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
      out << "\n";
    }
    write_text(g, out.str());
    return;
  }
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = row[i];
    rows.push_back(std::move(obj));
  }
  emit_document(g, json{{"columns", t.columns}, {"rows", std::move(rows)}, {"warnings", t.warnings}}, kind);
}

// Range syntax: comma-separated items, each either a value or start:stop[:step].
std::vector<double> parse_real_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream items(text);
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw UsageError(flag + ": '" + s + "' is not a number");
    }
  };
  for (std::string item; std::getline(items, item, ',');) {
    std::vector<std::string> parts;
    std::stringstream ps(item);
    for (std::string p; std::getline(ps, p, ':');) parts.push_back(p);
    if (parts.size() == 1) {
      out.push_back(number(parts[0]));
      continue;
    }
    if (parts.size() > 3) throw UsageError(flag + ": bad range '" + item + "'");
    const double start = number(parts[0]);
    const double stop = number(parts[1]);
    const double step = parts.size() == 3 ? number(parts[2]) : 1.0;
    if (!(step > 0.0) || stop < start) throw UsageError(flag + ": empty or ill-formed range '" + item + "'");
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    if (count > 1000000) throw UsageError(flag + ": range '" + item + "' is too long");
    for (long i = 0; i <= count; ++i) {
      // Snap to 12 significant digits so 0:0.3:0.1 yields 0.3, not 0.30000000000000004.
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.12g", start + static_cast<double>(i) * step);
      out.push_back(std::stod(buf));
    }
  }
  if (out.empty()) throw UsageError(flag + ": no values given");
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  for (double v : parse_real_list(text, flag)) {
    if (v != std::floor(v) || std::abs(v) > 1e9) throw UsageError(flag + ": " + format_double(v) + " is not an integer");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

json assignment_json(const std::vector<int>& assignment) {
  json j = json::object();
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    if (assignment[i] != 0) j["k" + std::to_string(i + 1)] = assignment[i];
  }
  return j;
}

const std::string kGmeWarning = "GME detection is only possible for N > 4";

// ---------------------------------------------------------------- bounds
struct BoundsArgs {
  int n = 0;
  int t = 2;
  std::string k;
  std::string m;
  bool full_sep = false;
  bool w_class = false;
};

int run_bounds(const GlobalOptions& g, const BoundsArgs& a) {
  if (a.n < 1) throw UsageError("--n must be >= 1");
  if (a.t != 2 && a.t != 4) throw UsageError("--t must be 2 or 4");
  Table table;
  table.columns = {"n", "t", "criterion", "exact", "value", "assignment"};
  std::vector<Criterion> wanted;
  const bool any = !a.k.empty() || !a.m.empty() || a.full_sep || a.w_class;
  if (a.full_sep || !any) wanted.push_back(Criterion::full_sep());
  if ((a.w_class || !any) && a.n >= 2 && a.t == 2) wanted.push_back(Criterion::w_class());
  if (a.w_class && a.t != 2) throw ValidationError("no R^(4) bound is known for the W class");

  const int k_max = (a.n - 1) / 2;
  if (!a.k.empty() || !any) {
    std::vector<int> ks;
    if (a.k.empty() || a.k == "all") {
      for (int k = 2; k <= k_max; ++k) ks.push_back(k);
    } else {
      ks = parse_int_list(a.k, "--k");
    }
    if (a.n <= 4) {
      table.warnings.push_back("no k-separability bound applies at N = " + std::to_string(a.n) + ": " +
                               kGmeWarning);
    } else {
      for (int k : ks) {
        require_ksep_range(a.n, k);
        wanted.push_back(Criterion::k_sep(k));
      }
    }
  }
  if (!a.m.empty() || (!any && a.t == 2)) {
    if (a.t != 2) throw ValidationError("m-producibility bounds are only available for R^(2)");
    std::vector<int> ms;
    if (a.m.empty() || a.m == "all") {
      for (int m = 1; m <= a.n; ++m) ms.push_back(m);
    } else {
      ms = parse_int_list(a.m, "--m-producible");
    }
    for (int m : ms) {
      if (m < 1 || m > a.n) throw ValidationError("--m-producible needs 1 <= m <= N");
      wanted.push_back(Criterion::m_producible(m));
    }
  }

  for (const auto& c : wanted) {
    const auto b = criterion_bound(a.n, c, a.t);
    json assignment = nullptr;
    if (c.kind == CriterionKind::MProducible) assignment = assignment_json(mprod_bound_r2(a.n, c.param).assignment);
    table.rows.push_back({a.n, a.t, c.label(), b.value.str(), b.value.to_double(), assignment});
    if (a.t == 4 && c.kind == CriterionKind::KSep) {
      for (const auto& w : hypothesis_caps(a.n, c).warnings) table.warnings.push_back(w);
    }
  }
  emit_table(g, table, "bounds");
  return kOk;
}

// ----------------------------------------------------------- ghz-moments
struct MomentsArgs {
  std::string n;
  std::string t = "2,4";
  std::optional<double> p;
  std::optional<double> fidelity;
  bool check_design = false;
};

int run_ghz_moments(const GlobalOptions& g, const MomentsArgs& a) {
  Table table;
  table.columns = {"n", "t", "p", "exact_pure", "value_pure", "value"};
  if (a.check_design) table.columns.push_back("design");
  for (int n : parse_int_list(a.n, "--n")) {
    if (n < 1) throw UsageError("--n values must be >= 1");
    const double p = a.fidelity ? fidelity_to_p(n, *a.fidelity) : a.p.value_or(0.0);
    const StateModel state = make_noisy_ghz(n, p);
    for (int t : parse_int_list(a.t, "--t")) {
      if (t != 2 && t != 4) throw UsageError("--t values must be 2 or 4");
      const Rational pure = ghz_moment_closed(n, t);
      std::vector<json> row{n, t, p, pure.str(), pure.to_double(), std::pow(1.0 - p, t) * pure.to_double()};
      if (a.check_design) row.push_back(moment_design(state, t));
      table.rows.push_back(std::move(row));
    }
  }
  emit_table(g, table, "ghz-moments");
  return kOk;
}

// ------------------------------------------------------------- threshold
struct ThresholdArgs {
  std::string n;
  std::string k;
  bool sweep = false;
};

int run_threshold(const GlobalOptions& g, const ThresholdArgs& a) {
  Table table;
  table.columns = {"n", "k", "p_star"};
  const std::string n_text = a.n.empty() ? (a.sweep ? "5:40" : "") : a.n;
  if (n_text.empty()) throw UsageError("threshold needs --n (a value, a range or 'odd-asymptotic') or --sweep");
  if (n_text == "odd-asymptotic") {
    if (a.k.empty() || a.k == "all") throw UsageError("--n odd-asymptotic needs explicit --k values");
    for (int k : parse_int_list(a.k, "--k")) {
      if (k < 2) throw ValidationError("--k must be >= 2");
      table.rows.push_back({"odd-asymptotic", k, noise_threshold_asymptotic(k)});
    }
    emit_table(g, table, "threshold");
    return kOk;
  }
  for (int n : parse_int_list(n_text, "--n")) {
    if (n <= 4) {
      table.warnings.push_back("N = " + std::to_string(n) + " skipped: " + kGmeWarning);
      continue;
    }
    std::vector<int> ks;
    if (a.k.empty() || a.k == "all") {
      for (int k = 2; k <= (n - 1) / 2; ++k) ks.push_back(k);
    } else {
      ks = parse_int_list(a.k, "--k");
    }
    for (int k : ks) {
      if (a.sweep && k > (n - 1) / 2) continue;
      table.rows.push_back({n, k, noise_threshold(n, k)});
    }
  }
  emit_table(g, table, "threshold");
  return kOk;
}

// ------------------------------------------------------------------ plan
struct PlanArgs {
  std::string n;
  std::optional<std::string> criterion;
  std::optional<double> target_r2;
  std::optional<double> p;
  std::optional<double> fidelity;
  std::string gamma = "0.9";
  std::optional<double> delta_rel;
  std::optional<double> delta_abs;
  std::optional<std::string> method;
  std::optional<long> k;
  long k_cap = kDefaultKCap;
  std::optional<std::string> sweep_n;
  bool sweep_gamma = false;
  std::optional<std::string> sweep_p;
  std::string methods = "cantelli,bernstein,chernoff,bernstein-variance";
};

double single_gamma(const PlanArgs& a) {
  const auto gs = parse_real_list(a.gamma, "--gamma");
  if (gs.size() != 1) throw UsageError("--gamma takes a single value unless --sweep-gamma is set");
  return gs[0];
}

int single_n(const std::string& text) {
  if (text.empty()) throw UsageError("--n is required");
  const auto ns = parse_int_list(text, "--n");
  if (ns.size() != 1) throw UsageError("--n takes a single value here");
  return ns[0];
}

double relative_delta(const PlanArgs& a, int n) {
  if (a.delta_abs) return *a.delta_abs / ghz_moment_closed(n, 2).to_double();
  return a.delta_rel.value_or(0.1);
}

BudgetPlan estimate_plan(int n, double gamma, double delta_rel, ErrorBarMethod method,
                         std::optional<long> k, long k_cap) {
  if (!k) return min_total_budget(n, gamma, delta_rel, method, k_cap);
  BudgetPlan plan;
  plan.n_qubits = n;
  plan.gamma = gamma;
  plan.delta_rel = delta_rel;
  plan.delta = delta_rel * ghz_moment_closed(n, 2).to_double();
  plan.method = method;
  plan.k_shots = *k;
  plan.m_settings = required_m(n, *k, gamma, delta_rel, method);
  plan.m_total = plan.m_settings * *k;
  const auto vb = variance_upper_bound(n, *k);
  plan.variance_bound = vb.value;
  plan.assumptions = vb.assumptions;
  plan.warnings = vb.warnings;
  plan.achieved = error_bar(method, static_cast<long>(plan.m_settings), *k, gamma, vb.value).delta;
  return plan;
}

std::vector<ErrorBarMethod> method_list(const PlanArgs& a) {
  std::vector<ErrorBarMethod> out;
  if (a.method) {
    out.push_back(parse_method(*a.method));
    return out;
  }
  std::stringstream ss(a.methods);
  for (std::string m; std::getline(ss, m, ',');) out.push_back(parse_method(m));
  return out;
}

double target_for(const PlanArgs& a, int n) {
  if (a.target_r2) return *a.target_r2;
  if (a.fidelity) return noisy_ghz_r2(n, fidelity_to_p(n, *a.fidelity));
  if (a.p) return noisy_ghz_r2(n, *a.p);
  throw UsageError("certification plans need --target-r2, --p or --fidelity");
}

int run_plan(const GlobalOptions& g, const PlanArgs& a) {
  const int sweeps = (a.sweep_n ? 1 : 0) + (a.sweep_gamma ? 1 : 0) + (a.sweep_p ? 1 : 0);
  if (sweeps > 1) throw UsageError("choose one of --sweep-n, --sweep-gamma, --sweep-p");

  if (a.sweep_p) {
    if (!a.criterion) throw UsageError("--sweep-p needs --criterion");
    const int n = single_n(a.n);
    const auto c = parse_criterion(*a.criterion);
    const double gamma = single_gamma(a);
    const auto method = a.method ? parse_method(*a.method) : ErrorBarMethod::CantelliOneSided;
    const double bound = criterion_bound_r2(n, c).to_double();
    Table table;
    table.columns = {"p", "target_r2", "bound_r2", "k", "m", "m_total"};
    for (double p : parse_real_list(*a.sweep_p, "--sweep-p")) {
      const double target = noisy_ghz_r2(n, p);
      try {
        const auto plan = certification_budget(n, c, target, gamma, method, a.k_cap);
        table.rows.push_back({p, target, bound, plan.k_shots, plan.m_settings, plan.m_total});
      } catch (const InfeasibleError&) {
        table.rows.push_back({p, target, bound, nullptr, nullptr, nullptr});
      }
    }
    emit_table(g, table, "plan-sweep-p");
    return kOk;
  }

  if (a.sweep_n) {
    if (a.criterion) throw UsageError("--sweep-n plans estimation budgets; drop --criterion");
    const double gamma = single_gamma(a);
    Table table;
    table.columns = {"n", "method", "delta_rel", "k", "m", "m_total"};
    for (int n : parse_int_list(*a.sweep_n, "--sweep-n")) {
      for (auto method : method_list(a)) {
        const double rel = relative_delta(a, n);
        const auto plan = estimate_plan(n, gamma, rel, method, a.k, a.k_cap);
        table.rows.push_back({n, method_name(method), rel, plan.k_shots, plan.m_settings, plan.m_total});
      }
    }
    emit_table(g, table, "plan-sweep-n");
    return kOk;
  }

  if (a.sweep_gamma) {
    if (a.criterion) throw UsageError("--sweep-gamma plans estimation budgets; drop --criterion");
    const int n = single_n(a.n);
    Table table;
    table.columns = {"gamma", "method", "delta_rel", "k", "m", "m_total"};
    for (double gamma : parse_real_list(a.gamma, "--gamma")) {
      for (auto method : method_list(a)) {
        const double rel = relative_delta(a, n);
        const auto plan = estimate_plan(n, gamma, rel, method, a.k, a.k_cap);
        table.rows.push_back({gamma, method_name(method), rel, plan.k_shots, plan.m_settings, plan.m_total});
      }
    }
    emit_table(g, table, "plan-sweep-gamma");
    return kOk;
  }

  const int n = single_n(a.n);
  const double gamma = single_gamma(a);
  if (a.criterion) {
    const auto c = parse_criterion(*a.criterion);
    const auto method = a.method ? parse_method(*a.method) : ErrorBarMethod::CantelliOneSided;
    const auto plan = certification_budget(n, c, target_for(a, n), gamma, method, a.k_cap);
    for (const auto& w : plan.warnings) std::cerr << "warning: " << w << "\n";
    emit_document(g, plan_document(plan), "plan");
    return kOk;
  }
  const auto method = a.method ? parse_method(*a.method) : ErrorBarMethod::CantelliTwoSided;
  const auto plan = estimate_plan(n, gamma, relative_delta(a, n), method, a.k, a.k_cap);
  emit_document(g, plan_document(plan), "plan");
  return kOk;
}

// -------------------------------------------------------------- simulate
struct SimulateArgs {
  std::optional<int> n;
  std::optional<double> p;
  std::optional<double> fidelity;
  std::optional<std::string> state;
  long m = 0;
  long k = 0;
  std::optional<std::uint64_t> seed;
  std::string mode = "compact";
  std::string path = "auto";
};

int run_simulate(const GlobalOptions& g, const SimulateArgs& a) {
  if (!a.seed) throw UsageError("simulate requires --seed");
  StateModel state = make_noisy_ghz(1, 0.0);
  if (a.state) {
    if (a.n || a.p || a.fidelity) throw UsageError("--state excludes --n, --p and --fidelity");
    state = parse_state_descriptor(*a.state);
  } else {
    if (!a.n) throw UsageError("simulate needs --state or --n");
    state = make_noisy_ghz(*a.n, a.fidelity ? fidelity_to_p(*a.n, *a.fidelity) : a.p.value_or(0.0));
  }
  ExperimentOptions opt;
  opt.m_settings = a.m;
  opt.k_shots = a.k;
  opt.seed = *a.seed;
  opt.mode = parse_mode(a.mode);
  opt.path = parse_path(a.path);
  opt.threads = g.threads;
  const auto records = run_experiment(state, opt);
  RecordHeader header{kRecordFormatVersion, n_qubits(state), a.k, opt.mode, *a.seed, describe(state)};
  std::ostringstream out;
  write_records(out, header, records);
  write_text(g, out.str());
  return kOk;
}

// -------------------------------------------------------------- estimate
struct EstimateArgs {
  std::string in;
  int t = 2;
  std::optional<std::string> marginal;
  double gamma = 0.9;
  std::string method = "cantelli";
};

int run_estimate(const GlobalOptions& g, const EstimateArgs& a) {
  const auto file = read_records_file(a.in);
  std::vector<SettingStats> stats;
  int n = file.header.n_qubits;
  json qubits = nullptr;
  if (a.marginal) {
    std::vector<std::size_t> subset;
    for (int q : parse_int_list(*a.marginal, "--marginal")) {
      if (q < 0 || q >= n) throw ValidationError("--marginal qubit " + std::to_string(q) + " outside [0, N)");
      subset.push_back(static_cast<std::size_t>(q));
    }
    if (file.header.mode != RecordMode::Full) {
      throw ValidationError("full mode required for marginal moments; '" + a.in + "' holds compact records");
    }
    for (const auto& r : file.records) stats.push_back(r.stats(subset));
    n = static_cast<int>(subset.size());
    qubits = subset;
  } else {
    stats = to_stats(file.records);
  }
  auto estimate = moment_estimate(stats, a.t, n);
  attach_error_bar(estimate, parse_method(a.method), a.gamma);
  json doc = estimate_document(estimate);
  doc["qubits"] = qubits;
  doc["state_descriptor"] = file.header.state_descriptor;
  doc["seed"] = file.header.seed;
  emit_document(g, std::move(doc), "estimate");
  return kOk;
}

// --------------------------------------------------------------- certify
struct CertifyArgs {
  std::string in;
  double gamma = 0.9;
  std::string method = "cantelli-one-sided";
  std::optional<std::string> criterion;
};

int run_certify(const GlobalOptions& g, const CertifyArgs& a) {
  const auto file = read_records_file(a.in);
  const auto method = parse_method(a.method);
  const auto stats = to_stats(file.records);
  CertificationReport report = certify_all(stats, file.header.n_qubits, a.gamma, method);
  if (a.criterion) {
    const auto v = test_criterion(report.estimate, parse_criterion(*a.criterion), a.gamma, method);
    report.verdicts = {v};
    report.summary_depth = v.depth;
  }
  for (const auto& note : report.notes) std::cerr << "note: " << note << "\n";
  json doc = certification_document(report);
  doc["state_descriptor"] = file.header.state_descriptor;
  doc["seed"] = file.header.seed;
  emit_document(g, std::move(doc), "certification");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized-measurement entanglement certification: bounds, budgets, simulation, estimation"};
  app.set_config("--config", "", "TOML or INI file with option values; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_flag("--reproducible", g.reproducible, "Omit the timestamp so documents are byte-reproducible");
  app.add_flag("--csv", g.csv, "Emit tables as CSV instead of JSON documents");
  app.add_option("--threads", g.threads, "Worker cap for simulation (0 = hardware threads)");
  app.add_option("-o,--out", g.out, "Write output to a file instead of standard output");

  BoundsArgs bounds;
  auto* cb = app.add_subcommand("bounds", "Criterion bounds on R^(2) or R^(4) as exact rationals");
  cb->add_option("--n", bounds.n, "Number of qubits")->required();
  cb->add_option("--t", bounds.t, "Moment order, 2 or 4");
  cb->add_option("--k", bounds.k, "k-separability: value, list, range or 'all'");
  cb->add_option("--m-producible", bounds.m, "m-producibility: value, list, range or 'all'");
  cb->add_flag("--full-sep", bounds.full_sep, "Include the full-separability bound");
  cb->add_flag("--w-class", bounds.w_class, "Include the W-class bound");

  MomentsArgs moments;
  auto* cm = app.add_subcommand("ghz-moments", "R^(2) and R^(4) of (noisy) GHZ states");
  cm->add_option("--n", moments.n, "Qubit numbers: value, list or range")->required();
  cm->add_option("--t", moments.t, "Moment orders");
  auto* mp = cm->add_option("--p", moments.p, "White-noise parameter");
  cm->add_option("--fidelity", moments.fidelity, "GHZ fidelity")->excludes(mp);
  cm->add_flag("--check-design", moments.check_design, "Add the design-sum value as a column");

  ThresholdArgs threshold;
  auto* ct = app.add_subcommand("threshold", "Noise thresholds p* for k-separability violation");
  ct->add_option("--n", threshold.n, "Qubit numbers or 'odd-asymptotic'");
  ct->add_option("--k", threshold.k, "Values of k or 'all'");
  ct->add_flag("--sweep", threshold.sweep, "Emit the (N, k, p*) grid, N = 5..40 unless --n is given");

  PlanArgs plan;
  auto* cp = app.add_subcommand("plan", "Measurement budgets for estimation or certification");
  cp->add_option("--n", plan.n, "Number of qubits");
  cp->add_option("--criterion", plan.criterion, "fullsep, wclass, ksep:K or mprod:M");
  auto* pt = cp->add_option("--target-r2", plan.target_r2, "Expected R^(2) of the prepared state");
  auto* pp = cp->add_option("--p", plan.p, "Noise parameter of the prepared GHZ state")->excludes(pt);
  cp->add_option("--fidelity", plan.fidelity, "GHZ fidelity of the prepared state")->excludes(pt)->excludes(pp);
  cp->add_option("--gamma", plan.gamma, "Confidence level (a list with --sweep-gamma)");
  auto* dr = cp->add_option("--delta-rel", plan.delta_rel, "Half-width as a fraction of R^(2)_GHZ");
  cp->add_option("--delta-abs", plan.delta_abs, "Absolute half-width")->excludes(dr);
  cp->add_option("--method", plan.method, "cantelli, cantelli-one-sided, bernstein, chernoff, bernstein-variance");
  cp->add_option("--methods", plan.methods, "Methods compared in sweeps");
  cp->add_option("--k", plan.k, "Fix the shots per setting instead of optimizing");
  cp->add_option("--k-cap", plan.k_cap, "Largest K searched");
  cp->add_option("--sweep-n", plan.sweep_n, "Qubit range for an estimation-budget sweep");
  cp->add_flag("--sweep-gamma", plan.sweep_gamma, "Sweep the values given to --gamma");
  cp->add_option("--sweep-p", plan.sweep_p, "Noise range for a certification-budget sweep");

  SimulateArgs sim;
  auto* cs = app.add_subcommand("simulate", "Sample randomized measurements and write a record file");
  cs->add_option("--n", sim.n, "Number of qubits (noisy GHZ)");
  auto* sp = cs->add_option("--p", sim.p, "White-noise parameter");
  cs->add_option("--fidelity", sim.fidelity, "GHZ fidelity")->excludes(sp);
  cs->add_option("--state", sim.state, "State descriptor, e.g. noisy_ghz:n=5,p=0.1 or blocks:bell,ghz3");
  cs->add_option("--m", sim.m, "Number of measurement settings")->required();
  cs->add_option("--k", sim.k, "Shots per setting")->required();
  cs->add_option("--seed", sim.seed, "Random seed (mandatory)");
  cs->add_option("--mode", sim.mode, "full or compact");
  cs->add_option("--path", sim.path, "Sampler: auto, dense, chain or binomial");

  EstimateArgs est;
  auto* ce = app.add_subcommand("estimate", "Estimate R^(t) from a record file");
  ce->add_option("--in", est.in, "Record file")->required();
  ce->add_option("--t", est.t, "Moment order");
  ce->add_option("--marginal", est.marginal, "Qubit subset (full-mode records only)");
  ce->add_option("--gamma", est.gamma, "Confidence level of the error bar");
  ce->add_option("--method", est.method, "Error-bar method");

  CertifyArgs cert;
  auto* cc = app.add_subcommand("certify", "Test separability criteria on a record file");
  cc->add_option("--in", cert.in, "Record file")->required();
  cc->add_option("--gamma", cert.gamma, "Confidence level");
  cc->add_option("--method", cert.method, "Tail bound");
  cc->add_option("--criterion", cert.criterion, "Test only this criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (cb->parsed()) return run_bounds(g, bounds);
    if (cm->parsed()) return run_ghz_moments(g, moments);
    if (ct->parsed()) return run_threshold(g, threshold);
    if (cp->parsed()) return run_plan(g, plan);
    if (cs->parsed()) return run_simulate(g, sim);
    if (ce->parsed()) return run_estimate(g, est);
    if (cc->parsed()) return run_certify(g, cert);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kResource;
  } catch (const IngestionError& e) {
    std::cerr << "ingestion error: " << e.what() << "\n";
    return kIngestion;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
