#include "rmcert/states.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rmcert/errors.hpp"

namespace rmcert {

namespace {

void require_qubits(int n) {
  if (n < 1) throw ValidationError("number of qubits must be >= 1, got " + std::to_string(n));
}

}  // namespace

DenseState DenseState::pure(int n_qubits, Eigen::VectorXcd amplitudes) {
  require_qubits(n_qubits);
  if (n_qubits > kMaxDensePureQubits) {
    throw ResourceError("dense pure states are limited to N <= " +
                        std::to_string(kMaxDensePureQubits));
  }
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (amplitudes.size() != dim) {
    throw ValidationError("amplitude vector has size " + std::to_string(amplitudes.size()) +
                          ", expected 2^N = " + std::to_string(dim));
  }
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > kStateTolerance) {
    throw ValidationError("pure state is not normalized (|psi|^2 = " + std::to_string(norm2) + ")");
  }
  return DenseState(n_qubits, true, std::move(amplitudes), {});
}

DenseState DenseState::mixed(int n_qubits, Eigen::MatrixXcd rho) {
  require_qubits(n_qubits);
  if (n_qubits > kMaxDenseMixedQubits) {
    throw ResourceError("dense mixed states are limited to N <= " +
                        std::to_string(kMaxDenseMixedQubits));
  }
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (rho.rows() != dim || rho.cols() != dim) {
    throw ValidationError("density matrix must be 2^N x 2^N");
  }
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kStateTolerance) {
    throw ValidationError("density matrix is not Hermitian");
  }
  const Complex tr = rho.trace();
  if (std::abs(tr.real() - 1.0) > kStateTolerance || std::abs(tr.imag()) > kStateTolerance) {
    throw ValidationError("density matrix trace differs from 1");
  }
  return DenseState(n_qubits, false, {}, std::move(rho));
}

const Eigen::VectorXcd& DenseState::amplitudes() const {
  if (!pure_) throw ValidationError("amplitudes requested from a mixed state");
  return psi_;
}

Eigen::MatrixXcd DenseState::density() const {
  if (pure_) return psi_ * psi_.adjoint();
  return rho_;
}

double DenseState::overlap(const Eigen::VectorXcd& psi) const {
  if (pure_) return std::norm(psi.dot(psi_));
  return (psi.adjoint() * rho_ * psi)(0, 0).real();
}

void DenseState::check_positive() const {
  if (pure_) return;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < kPositivityTolerance) {
    throw ValidationError("density matrix has negative eigenvalue " + std::to_string(min_eig));
  }
}

DenseState DenseState::apply_local(int qubit, const Eigen::Matrix2cd& u) const {
  if (qubit < 0 || qubit >= n_qubits_) throw ValidationError("qubit index out of range");
  const Eigen::Index dim = dimension();
  const Eigen::Index stride = Eigen::Index{1} << (n_qubits_ - 1 - qubit);
  auto rotate_rows = [&](auto& m) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (i & stride) continue;
      const Eigen::Index j = i | stride;
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const Complex a = m(i, c), b = m(j, c);
        m(i, c) = u(0, 0) * a + u(0, 1) * b;
        m(j, c) = u(1, 0) * a + u(1, 1) * b;
      }
    }
  };
  if (pure_) {
    Eigen::VectorXcd psi = psi_;
    rotate_rows(psi);
    return DenseState(n_qubits_, true, std::move(psi), {});
  }
  Eigen::MatrixXcd rho = rho_;
  rotate_rows(rho);
  Eigen::MatrixXcd rho_t = rho.adjoint();
  rotate_rows(rho_t);
  return DenseState(n_qubits_, false, {}, rho_t.adjoint());
}

BlockProduct::BlockProduct(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw ValidationError("block product needs at least one block");
  for (const auto& b : blocks_) {
    switch (b.kind) {
      case BlockKind::Bell:
        if (b.size != 2) throw ValidationError("Bell blocks have size 2");
        break;
      case BlockKind::SingleQubitPure:
        if (b.size != 1) throw ValidationError("single-qubit blocks have size 1");
        break;
      case BlockKind::Ghz:
        if (b.size < 1) throw ValidationError("GHZ blocks need size >= 1");
        break;
    }
    n_qubits_ += b.size;
  }
}

BlockProduct BlockProduct::bell_ghz(int n_qubits, int k) {
  const int ghz = n_qubits - 2 * (k - 1);
  if (k < 1 || ghz < 1) throw ValidationError("Bell^(k-1) x GHZ needs N - 2(k-1) >= 1");
  std::vector<Block> blocks(static_cast<std::size_t>(k - 1), Block{BlockKind::Bell, 2});
  blocks.push_back(Block{BlockKind::Ghz, ghz});
  return BlockProduct(std::move(blocks));
}

int n_qubits(const StateModel& state) {
  return std::visit(
      [](const auto& s) -> int {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NoisyGhz>) {
          return s.n_qubits;
        } else {
          return s.n_qubits();
        }
      },
      state);
}

NoisyGhz make_noisy_ghz(int n_qubits, double p) {
  require_qubits(n_qubits);
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("noise p must lie in [0, 1]");
  return NoisyGhz{n_qubits, p};
}

double fidelity_to_p(int n_qubits, double fidelity) {
  require_qubits(n_qubits);
  const double floor = std::ldexp(1.0, -n_qubits);
  if (!(fidelity > floor && fidelity <= 1.0)) {
    throw ValidationError("fidelity must lie in (2^-N, 1]");
  }
  return (1.0 - fidelity) / (1.0 - floor);
}

double ghz_fidelity(const NoisyGhz& state) {
  return (1.0 - state.p) + state.p * std::ldexp(1.0, -state.n_qubits);
}

Eigen::VectorXcd ghz_vector(int n_qubits) {
  require_qubits(n_qubits);
  if (n_qubits > kMaxDensePureQubits) {
    throw ResourceError("dense pure states are limited to N <= " +
                        std::to_string(kMaxDensePureQubits));
  }
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  // For N = 1 this is |+>.
  psi(0) = psi(dim - 1) = 1.0 / std::sqrt(2.0);
  return psi;
}

DenseState densify(const NoisyGhz& state) {
  const auto checked = make_noisy_ghz(state.n_qubits, state.p);
  if (checked.p == 0.0) return DenseState::pure(checked.n_qubits, ghz_vector(checked.n_qubits));
  if (checked.n_qubits > kMaxDenseMixedQubits) {
    throw ResourceError("dense mixed states are limited to N <= " +
                        std::to_string(kMaxDenseMixedQubits));
  }
  const Eigen::VectorXcd psi = ghz_vector(checked.n_qubits);
  const Eigen::Index dim = psi.size();
  Eigen::MatrixXcd rho = (1.0 - checked.p) * (psi * psi.adjoint());
  rho.diagonal().array() += checked.p / static_cast<double>(dim);
  return DenseState::mixed(checked.n_qubits, std::move(rho));
}

DenseState densify(const BlockProduct& state) {
  if (state.n_qubits() > kMaxDensePureQubits) {
    throw ResourceError("dense pure states are limited to N <= " +
                        std::to_string(kMaxDensePureQubits));
  }
  Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
  for (const auto& b : state.blocks()) {
    Eigen::VectorXcd block;
    if (b.kind == BlockKind::SingleQubitPure) {
      block = Eigen::VectorXcd::Zero(2);
      block(0) = 1.0;
    } else {
      block = ghz_vector(b.size);
    }
    Eigen::VectorXcd next(psi.size() * block.size());
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
      next.segment(i * block.size(), block.size()) = psi(i) * block;
    }
    psi = std::move(next);
  }
  return DenseState::pure(state.n_qubits(), std::move(psi));
}

DenseState densify(const StateModel& state) {
  return std::visit(
      [](const auto& s) -> DenseState {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, DenseState>) {
          return s;
        } else {
          return densify(s);
        }
      },
      state);
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string block_token(const Block& b) {
  switch (b.kind) {
    case BlockKind::Bell:
      return "bell";
    case BlockKind::SingleQubitPure:
      return "zero";
    case BlockKind::Ghz:
      return "ghz" + std::to_string(b.size);
  }
  return {};
}

int parse_int(const std::string& s, const std::string& ctx) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ValidationError("bad integer '" + s + "' in state descriptor '" + ctx + "'");
  }
  return v;
}

double parse_double(const std::string& s, const std::string& ctx) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("bad number '" + s + "' in state descriptor '" + ctx + "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

std::string describe(const StateModel& state) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NoisyGhz>) {
          return "noisy_ghz:n=" + std::to_string(s.n_qubits) + ",p=" + format_double(s.p);
        } else if constexpr (std::is_same_v<T, BlockProduct>) {
          std::string out = "blocks:";
          for (std::size_t i = 0; i < s.blocks().size(); ++i) {
            if (i) out += ",";
            out += block_token(s.blocks()[i]);
          }
          return out;
        } else {
          return std::string(s.is_pure() ? "dense_pure" : "dense_mixed") +
                 ":n=" + std::to_string(s.n_qubits());
        }
      },
      state);
}

StateModel parse_state_descriptor(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ValidationError("state descriptor needs 'kind:...': " + text);
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  if (kind == "noisy_ghz") {
    int n = -1;
    double p = -1.0;
    for (const auto& kv : split(rest, ',')) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ValidationError("expected key=value in '" + text + "'");
      const auto key = kv.substr(0, eq), val = kv.substr(eq + 1);
      if (key == "n") {
        n = parse_int(val, text);
      } else if (key == "p") {
        p = parse_double(val, text);
      } else {
        throw ValidationError("unknown key '" + key + "' in '" + text + "'");
      }
    }
    return make_noisy_ghz(n, p);
  }
  if (kind == "blocks") {
    std::vector<Block> blocks;
    for (const auto& tok : split(rest, ',')) {
      if (tok == "bell") {
        blocks.push_back({BlockKind::Bell, 2});
      } else if (tok == "zero") {
        blocks.push_back({BlockKind::SingleQubitPure, 1});
      } else if (tok.rfind("ghz", 0) == 0) {
        blocks.push_back({BlockKind::Ghz, parse_int(tok.substr(3), text)});
      } else {
        throw ValidationError("unknown block '" + tok + "' in '" + text + "'");
      }
    }
    return BlockProduct(std::move(blocks));
  }
  throw ValidationError("unsupported state descriptor '" + text + "'");
}

}  // namespace rmcert
