#include "rmcert/bounds.hpp"

#include <cctype>
#include <algorithm>
#include <cmath>

#include "rmcert/errors.hpp"
#include "rmcert/moments.hpp"

namespace rmcert {

namespace {

void require_qubits(int n) {
  if (n < 1) throw ValidationError("number of qubits must be >= 1, got " + std::to_string(n));
}

void require_m_range(int n, int m) {
  if (m < 1 || m > n) {
    throw ValidationError("m-producibility needs 1 <= m <= N = " + std::to_string(n) + ", got m = " +
                          std::to_string(m));
  }
}

// R^(4) cap of a single i-qubit block.
Rational block_r4_cap(int i) {
  if (i == 4) return bell_product_r4(4);
  return ghz_moment_closed(i, 4);
}

// best[n] = max over partitions of n into parts in [lo, hi] of prod weight(part).
// Missing entries (no partition) are nullopt.
template <class Weight>
std::vector<std::optional<Rational>> partition_max(int n, int lo, int hi, Weight weight) {
  std::vector<std::optional<Rational>> best(static_cast<std::size_t>(n) + 1);
  best[0] = Rational(1);
  for (int s = 1; s <= n; ++s) {
    for (int i = lo; i <= std::min(hi, s); ++i) {
      const auto& rest = best[static_cast<std::size_t>(s - i)];
      if (!rest) continue;
      Rational cand = weight(i) * *rest;
      auto& cur = best[static_cast<std::size_t>(s)];
      if (!cur || cand > *cur) cur = std::move(cand);
    }
  }
  return best;
}

void add_ksep_r4_notes(int n, int k, HypothesisCaps& caps) {
  const int ghz_size = n - 2 * (k - 1);
  if (ghz_size > 4) caps.assumptions.push_back(kAssumptionGhzR4);
  if (ghz_size == 4) {
    caps.warnings.push_back(
        "R^(4) cap uses R^(4) of GHZ_4 for the 4-qubit block, below the Bell-pair product value 1/25");
  }
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::string Criterion::label() const {
  switch (kind) {
    case CriterionKind::FullSep:
      return "fullsep";
    case CriterionKind::WClass:
      return "wclass";
    case CriterionKind::KSep:
      return "ksep:" + std::to_string(param);
    case CriterionKind::MProducible:
      return "mprod:" + std::to_string(param);
  }
  return "unknown";
}

Criterion parse_criterion(const std::string& text) {
  std::string s = lower(text);
  if (s == "fullsep" || s == "full-sep" || s == "separable") return Criterion::full_sep();
  if (s == "wclass" || s == "w-class") return Criterion::w_class();
  const auto open = s.find_first_of(":(");
  if (open == std::string::npos) throw ValidationError("unknown criterion '" + text + "'");
  const std::string head = s.substr(0, open);
  std::string arg = s.substr(open + 1);
  if (!arg.empty() && arg.back() == ')') arg.pop_back();
  int value = 0;
  try {
    std::size_t used = 0;
    value = std::stoi(arg, &used);
    if (used != arg.size()) throw std::invalid_argument(arg);
  } catch (const std::exception&) {
    throw ValidationError("criterion parameter is not an integer in '" + text + "'");
  }
  if (head == "ksep" || head == "k-sep") return Criterion::k_sep(value);
  if (head == "mprod" || head == "mproducible" || head == "m-producible") {
    return Criterion::m_producible(value);
  }
  throw ValidationError("unknown criterion '" + text + "'");
}

void require_ksep_range(int n_qubits, int k) {
  require_qubits(n_qubits);
  const int hi = (n_qubits - 1) / 2;
  if (k < 2 || k > hi) {
    std::string msg = "k-separability bound needs 2 <= k <= floor((N-1)/2) = " +
                      std::to_string(hi) + " for N = " + std::to_string(n_qubits) + ", got k = " +
                      std::to_string(k);
    if (hi < 2) msg += " (no admissible k: GME detection is only possible for N > 4)";
    throw ValidationError(msg);
  }
}

Rational ksep_bound_r2(int n_qubits, int k) {
  require_ksep_range(n_qubits, k);
  Rational num = Rational::power(2, static_cast<unsigned long>(n_qubits - 2 * k + 1));
  if (n_qubits % 2 == 0) num += Rational(1);
  return num / Rational::power(3, static_cast<unsigned long>(n_qubits - k + 1));
}

Rational ksep_bound_r4(int n_qubits, int k) {
  require_ksep_range(n_qubits, k);
  const int ghz_size = n_qubits - 2 * (k - 1);
  return ghz_moment_closed(ghz_size, 4) / Rational::power(5, static_cast<unsigned long>(k - 1));
}

FullSepBounds fullsep_bounds(int n_qubits) {
  require_qubits(n_qubits);
  const auto n = static_cast<unsigned long>(n_qubits);
  return {Rational(1) / Rational::power(3, n), Rational(1) / Rational::power(5, n)};
}

Rational wclass_bound_r2(int n_qubits) {
  if (n_qubits < 2) throw ValidationError("W-class bound needs N >= 2");
  return (Rational(5) - Rational(4, n_qubits)) /
         Rational::power(3, static_cast<unsigned long>(n_qubits));
}

ProducibilityBound mprod_bound_r2(int n_qubits, int m) {
  require_qubits(n_qubits);
  require_m_range(n_qubits, m);
  std::vector<Rational> weight(static_cast<std::size_t>(m) + 1);
  for (int i = 1; i <= m; ++i) weight[static_cast<std::size_t>(i)] = ghz_moment_closed(i, 2);
  auto w = [&](int i) { return weight[static_cast<std::size_t>(i)]; };

  // suffix[j][n]: best product over partitions of n into parts in [j, m].
  std::vector<std::vector<std::optional<Rational>>> suffix(static_cast<std::size_t>(m) + 2);
  for (int j = 1; j <= m + 1; ++j) suffix[static_cast<std::size_t>(j)] = partition_max(n_qubits, j, m, w);

  ProducibilityBound out;
  out.value = *suffix[1][static_cast<std::size_t>(n_qubits)];
  out.assignment.assign(static_cast<std::size_t>(m), 0);

  // Greedy lexicographic reconstruction: smallest k_i that still reaches the optimum.
  Rational remaining_target = out.value;
  int remaining = n_qubits;
  for (int i = 1; i <= m; ++i) {
    Rational factor(1);
    for (int count = 0; count * i <= remaining; ++count) {
      const auto& rest = suffix[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(remaining - count * i)];
      if (rest && factor * *rest == remaining_target) {
        out.assignment[static_cast<std::size_t>(i - 1)] = count;
        remaining -= count * i;
        remaining_target = remaining_target / factor;
        break;
      }
      factor *= w(i);
    }
  }
  return out;
}

double noise_threshold(int n_qubits, int k) {
  require_ksep_range(n_qubits, k);
  double f = 1.0;
  if (n_qubits % 2 == 0) {
    const double big = std::ldexp(1.0, n_qubits + 1);
    f = std::sqrt((std::ldexp(1.0, 2 * k) + big) / (4.0 + big));
  }
  return 1.0 - f * std::pow(0.75, 0.5 * (k - 1));
}

double noise_threshold_asymptotic(int k) {
  if (k < 2) throw ValidationError("k must be >= 2");
  return 1.0 - std::pow(0.75, 0.5 * (k - 1));
}

int depth_implication(int n_qubits, const Criterion& violated) {
  require_qubits(n_qubits);
  switch (violated.kind) {
    case CriterionKind::KSep:
      require_ksep_range(n_qubits, violated.param);
      return (n_qubits + violated.param - 2) / (violated.param - 1);
    case CriterionKind::MProducible:
      require_m_range(n_qubits, violated.param);
      return violated.param + 1;
    case CriterionKind::FullSep:
      return 2;
    case CriterionKind::WClass:
      break;
  }
  throw ValidationError("criterion " + violated.label() + " carries no depth implication");
}

Rational global_r4_cap(int n_qubits) {
  require_qubits(n_qubits);
  return block_r4_cap(n_qubits);
}

Rational criterion_bound_r2(int n_qubits, const Criterion& criterion) {
  switch (criterion.kind) {
    case CriterionKind::FullSep:
      return fullsep_bounds(n_qubits).r2;
    case CriterionKind::KSep:
      return ksep_bound_r2(n_qubits, criterion.param);
    case CriterionKind::WClass:
      return wclass_bound_r2(n_qubits);
    case CriterionKind::MProducible:
      return mprod_bound_r2(n_qubits, criterion.param).value;
  }
  throw ValidationError("unknown criterion");
}

CriterionBound criterion_bound(int n_qubits, const Criterion& criterion, int t) {
  if (t != 2 && t != 4) throw ValidationError("moment order must be 2 or 4");
  CriterionBound out{criterion, n_qubits, t, Rational(0), std::nullopt};
  switch (criterion.kind) {
    case CriterionKind::FullSep: {
      const auto b = fullsep_bounds(n_qubits);
      out.value = t == 2 ? b.r2 : b.r4;
      out.saturating = BlockProduct(std::vector<Block>(
          static_cast<std::size_t>(n_qubits), Block{BlockKind::SingleQubitPure, 1}));
      break;
    }
    case CriterionKind::KSep:
      out.value = t == 2 ? ksep_bound_r2(n_qubits, criterion.param)
                         : ksep_bound_r4(n_qubits, criterion.param);
      out.saturating = BlockProduct::bell_ghz(n_qubits, criterion.param);
      break;
    case CriterionKind::WClass:
      if (t != 2) throw ValidationError("no R^(4) bound is known for the W class");
      out.value = wclass_bound_r2(n_qubits);
      break;
    case CriterionKind::MProducible: {
      if (t != 2) throw ValidationError("m-producibility bounds are only available for R^(2)");
      const auto b = mprod_bound_r2(n_qubits, criterion.param);
      out.value = b.value;
      std::vector<Block> blocks;
      for (std::size_t i = 0; i < b.assignment.size(); ++i)
        for (int c = 0; c < b.assignment[i]; ++c) {
          const int size = static_cast<int>(i) + 1;
          blocks.push_back(size == 1 ? Block{BlockKind::SingleQubitPure, 1}
                                     : Block{BlockKind::Ghz, size});
        }
      out.saturating = BlockProduct(std::move(blocks));
      break;
    }
  }
  return out;
}

HypothesisCaps hypothesis_caps(int n_qubits, const std::optional<Criterion>& hypothesis) {
  require_qubits(n_qubits);
  HypothesisCaps caps;
  if (!hypothesis) {
    caps.r2 = ghz_moment_closed(n_qubits, 2);
    caps.r4 = global_r4_cap(n_qubits);
    if (n_qubits > 4) caps.assumptions.push_back(kAssumptionGhzR4);
    return caps;
  }
  const Criterion& c = *hypothesis;
  switch (c.kind) {
    case CriterionKind::FullSep: {
      const auto b = fullsep_bounds(n_qubits);
      caps.r2 = b.r2;
      caps.r4 = b.r4;
      break;
    }
    case CriterionKind::KSep: {
      caps.r2 = ksep_bound_r2(n_qubits, c.param);
      caps.r4 = ksep_bound_r4(n_qubits, c.param);
      add_ksep_r4_notes(n_qubits, c.param, caps);
      break;
    }
    case CriterionKind::WClass:
      caps.r2 = wclass_bound_r2(n_qubits);
      caps.r4 = global_r4_cap(n_qubits);
      if (n_qubits > 4) caps.assumptions.push_back(kAssumptionGhzR4);
      caps.warnings.push_back("no R^(4) bound is known for the W class; the global R^(4) cap is used");
      break;
    case CriterionKind::MProducible: {
      caps.r2 = mprod_bound_r2(n_qubits, c.param).value;
      for (int k = 2; k <= (n_qubits - 1) / 2; ++k) {
        if (n_qubits - 2 * (k - 1) <= c.param && ksep_bound_r2(n_qubits, k) == caps.r2) {
          caps.r4 = ksep_bound_r4(n_qubits, k);
          add_ksep_r4_notes(n_qubits, k, caps);
          caps.warnings.push_back("R^(4) cap taken from the matching block structure " +
                                  Criterion::k_sep(k).label());
          return caps;
        }
      }
      const auto best = partition_max(n_qubits, 1, c.param, block_r4_cap);
      caps.r4 = *best[static_cast<std::size_t>(n_qubits)];
      if (c.param > 4) caps.assumptions.push_back(kAssumptionGhzR4);
      caps.warnings.push_back(
          "R^(4) cap from the maximum over products of blocks with at most " +
          std::to_string(c.param) + " qubits");
      break;
    }
  }
  return caps;
}

std::vector<Criterion> applicable_criteria(int n_qubits) {
  require_qubits(n_qubits);
  std::vector<Criterion> out{Criterion::full_sep()};
  if (n_qubits >= 2) out.push_back(Criterion::w_class());
  for (int k = 2; k <= (n_qubits - 1) / 2; ++k) out.push_back(Criterion::k_sep(k));
  for (int m = 2; m < n_qubits; ++m) out.push_back(Criterion::m_producible(m));
  return out;
}

}  // namespace rmcert
