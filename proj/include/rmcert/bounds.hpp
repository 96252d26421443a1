#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rmcert/rational.hpp"
#include "rmcert/states.hpp"

namespace rmcert {

enum class CriterionKind { FullSep, KSep, WClass, MProducible };

/// A separability hypothesis. `param` is k for KSep and m for MProducible.
struct Criterion {
  CriterionKind kind = CriterionKind::FullSep;
  int param = 0;

  static Criterion full_sep() { return {CriterionKind::FullSep, 0}; }
  static Criterion k_sep(int k) { return {CriterionKind::KSep, k}; }
  static Criterion w_class() { return {CriterionKind::WClass, 0}; }
  static Criterion m_producible(int m) { return {CriterionKind::MProducible, m}; }

  /// "fullsep", "wclass", "ksep:3", "mprod:4".
  std::string label() const;

  friend bool operator==(const Criterion&, const Criterion&) = default;
};

/// Inverse of Criterion::label(); also accepts "ksep(3)" and "mproducible:4".
Criterion parse_criterion(const std::string& text);

struct CriterionBound {
  Criterion criterion;
  int n_qubits = 0;
  int t = 2;
  Rational value;
  std::optional<BlockProduct> saturating;
};

/// Throws ValidationError unless 2 <= k <= floor((N-1)/2).
void require_ksep_range(int n_qubits, int k);

/// (2^(N-2k+1) + [N even]) / 3^(N-k+1).
Rational ksep_bound_r2(int n_qubits, int k);

/// R^(4) of Bell^(k-1) (x) GHZ_(N-2(k-1)). When the GHZ block has 4 qubits
/// this is smaller than the Bell-pair product value; hypothesis_caps flags it.
Rational ksep_bound_r4(int n_qubits, int k);

struct FullSepBounds {
  Rational r2;
  Rational r4;
};

/// (1/3^N, 1/5^N).
FullSepBounds fullsep_bounds(int n_qubits);

/// (5 - 4/N) / 3^N.
Rational wclass_bound_r2(int n_qubits);

struct ProducibilityBound {
  Rational value;
  /// assignment[i-1] = number of GHZ_i blocks; sum of i * assignment[i-1] is N.
  std::vector<int> assignment;
};

/// Maximum of prod R^(2)_GHZ_i^(k_i) over partitions of N into blocks of size
/// <= m. Ties resolve to the lexicographically smallest (k_1, ..., k_m).
ProducibilityBound mprod_bound_r2(int n_qubits, int m);

/// Largest p for which R^(2) of the noisy GHZ state still exceeds the k-separable bound.
double noise_threshold(int n_qubits, int k);

/// 1 - (3/4)^((k-1)/2).
double noise_threshold_asymptotic(int k);

/// Entanglement depth certified when the criterion is violated.
int depth_implication(int n_qubits, const Criterion& violated);

/// Largest R^(4) over all N-qubit states, assuming GHZ is optimal for N != 4
/// and using the Bell-pair product for N = 4.
Rational global_r4_cap(int n_qubits);

/// R^(2) bound of any criterion; KSep and MProducible ranges are checked.
Rational criterion_bound_r2(int n_qubits, const Criterion& criterion);

CriterionBound criterion_bound(int n_qubits, const Criterion& criterion, int t = 2);

inline const std::string kAssumptionGhzR4 =
    "GHZ maximizes R^(4) among N-qubit states for N > 4 (conjectured)";

/// Moment caps valid under a hypothesis (or over all states when nullopt).
struct HypothesisCaps {
  Rational r2;
  Rational r4;
  std::vector<std::string> assumptions;
  std::vector<std::string> warnings;
};

HypothesisCaps hypothesis_caps(int n_qubits, const std::optional<Criterion>& hypothesis);

/// FullSep, WClass (N >= 2), every admissible KSep(k), MProducible(m) for m = 2..N-1.
std::vector<Criterion> applicable_criteria(int n_qubits);

}  // namespace rmcert
