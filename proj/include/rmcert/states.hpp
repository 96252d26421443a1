#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace rmcert {

using Complex = std::complex<double>;

inline constexpr double kStateTolerance = 1e-12;
inline constexpr double kPositivityTolerance = -1e-10;
inline constexpr int kMaxDensePureQubits = 24;
inline constexpr int kMaxDenseMixedQubits = 14;

// Basis index convention for all dense objects: qubit 0 is the most
// significant bit, and |0> is the +1 eigenstate of sigma_z.

/// Explicit N-qubit state, either a normalized amplitude vector or a density
/// matrix. Immutable after construction.
class DenseState {
 public:
  static DenseState pure(int n_qubits, Eigen::VectorXcd amplitudes);
  static DenseState mixed(int n_qubits, Eigen::MatrixXcd rho);

  int n_qubits() const { return n_qubits_; }
  bool is_pure() const { return pure_; }
  Eigen::Index dimension() const { return Eigen::Index{1} << n_qubits_; }

  /// Amplitudes; only valid for pure states.
  const Eigen::VectorXcd& amplitudes() const;
  /// Density matrix; built on the fly for pure states.
  Eigen::MatrixXcd density() const;

  /// <psi|rho|psi> for a normalized vector psi.
  double overlap(const Eigen::VectorXcd& psi) const;

  /// Eigenvalue check against kPositivityTolerance. Throws ValidationError.
  void check_positive() const;

  /// Applies a single-qubit unitary to one qubit.
  DenseState apply_local(int qubit, const Eigen::Matrix2cd& u) const;

 private:
  DenseState(int n, bool pure, Eigen::VectorXcd psi, Eigen::MatrixXcd rho)
      : n_qubits_(n), pure_(pure), psi_(std::move(psi)), rho_(std::move(rho)) {}

  int n_qubits_ = 0;
  bool pure_ = true;
  Eigen::VectorXcd psi_;
  Eigen::MatrixXcd rho_;
};

/// rho = p * 1/2^N + (1 - p) |GHZ_N><GHZ_N|, kept symbolic.
struct NoisyGhz {
  int n_qubits = 1;
  double p = 0.0;
};

enum class BlockKind { Ghz, Bell, SingleQubitPure };

// SingleQubitPure is |0>; Bell is (|00> + |11>)/sqrt(2), i.e. GHZ_2.
struct Block {
  BlockKind kind = BlockKind::Ghz;
  int size = 1;
};

/// Tensor product of named pure blocks, in qubit order.
class BlockProduct {
 public:
  explicit BlockProduct(std::vector<Block> blocks);

  /// Bell^(k-1) (x) GHZ_(N-2(k-1)), the states saturating the k-separability bounds.
  static BlockProduct bell_ghz(int n_qubits, int k);

  const std::vector<Block>& blocks() const { return blocks_; }
  int n_qubits() const { return n_qubits_; }

 private:
  std::vector<Block> blocks_;
  int n_qubits_ = 0;
};

using StateModel = std::variant<DenseState, NoisyGhz, BlockProduct>;

int n_qubits(const StateModel& state);

NoisyGhz make_noisy_ghz(int n_qubits, double p);

/// Noise parameter giving GHZ fidelity F: p = (1 - F) / (1 - 2^-N).
double fidelity_to_p(int n_qubits, double fidelity);

/// <GHZ_N| rho |GHZ_N> = (1 - p) + p / 2^N.
double ghz_fidelity(const NoisyGhz& state);

Eigen::VectorXcd ghz_vector(int n_qubits);

DenseState densify(const NoisyGhz& state);
DenseState densify(const BlockProduct& state);
DenseState densify(const StateModel& state);

/// Text form stored in record headers, e.g. "noisy_ghz:n=11,p=0.24" or
/// "blocks:bell,bell,ghz5". Dense states are described as "dense_pure:n=4" or "dense_mixed:n=4".
std::string describe(const StateModel& state);

/// Inverse of describe() for the symbolic families.
StateModel parse_state_descriptor(const std::string& text);

}  // namespace rmcert
