#include "rmcert/moments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "rmcert/errors.hpp"

namespace rmcert {

BlochDirection BlochDirection::make(double x, double y, double z) {
  const double n2 = x * x + y * y + z * z;
  if (!(std::abs(n2 - 1.0) <= kDirectionTolerance)) {
    throw ValidationError("Bloch direction is not a unit vector (|u|^2 = " + std::to_string(n2) +
                          ")");
  }
  return BlochDirection{x, y, z};
}

BlochDirection BlochDirection::from_angles(double theta, double phi) {
  return BlochDirection{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                        std::cos(theta)};
}

double BlochDirection::theta() const { return std::acos(std::clamp(z, -1.0, 1.0)); }
double BlochDirection::phi() const { return std::atan2(y, x); }

namespace {

SphericalDesign make_pauli_design() {
  SphericalDesign d;
  d.order = 3;
  d.axes = {kAxisX, kAxisY, kAxisZ};
  for (const auto& a : d.axes) {
    d.points.push_back(a);
    d.points.push_back(BlochDirection{-a.x, -a.y, -a.z});
  }
  return d;
}

SphericalDesign make_icosahedron_design() {
  // Vertices (0, +-1, +-g), (+-1, +-g, 0), (+-g, 0, +-1) with g the golden ratio.
  const double g = std::numbers::phi;
  const double s = 1.0 / std::sqrt(1.0 + g * g);
  SphericalDesign d;
  d.order = 5;
  d.axes = {
      {0.0, s, g * s}, {0.0, s, -g * s}, {s, g * s, 0.0},
      {s, -g * s, 0.0}, {g * s, 0.0, s}, {-g * s, 0.0, s},
  };
  for (const auto& a : d.axes) {
    d.points.push_back(a);
    d.points.push_back(BlochDirection{-a.x, -a.y, -a.z});
  }
  return d;
}

void require_moment_order(int t) {
  if (t != 2 && t != 4) throw ValidationError("moment order must be 2 or 4, got " + std::to_string(t));
}

double double_factorial(int n) {
  double r = 1.0;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

double ipow(double base, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

// Applies sigma_u to qubit q of a state vector in place.
void apply_pauli(Eigen::VectorXcd& v, int n, int q, const Eigen::Matrix2cd& s) {
  const Eigen::Index stride = Eigen::Index{1} << (n - 1 - q);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i & stride) continue;
    const Eigen::Index j = i | stride;
    const Complex a = v(i), b = v(j);
    v(i) = s(0, 0) * a + s(0, 1) * b;
    v(j) = s(1, 0) * a + s(1, 1) * b;
  }
}

// rho' = tr_last[(1 (x) sigma) rho], for a row-major dim x dim operator.
void contract_last(const std::vector<Complex>& rho, std::size_t dim, const Eigen::Matrix2cd& s,
                   std::vector<Complex>& out) {
  const std::size_t half = dim / 2;
  out.assign(half * half, Complex{});
  const Complex s00 = s(0, 0), s01 = s(0, 1), s10 = s(1, 0), s11 = s(1, 1);
  for (std::size_t i = 0; i < half; ++i) {
    const Complex* r0 = &rho[(2 * i) * dim];
    const Complex* r1 = &rho[(2 * i + 1) * dim];
    Complex* o = &out[i * half];
    for (std::size_t j = 0; j < half; ++j) {
      // sum_{a,b} rho[(2i+a),(2j+b)] s(b,a)
      o[j] = r0[2 * j] * s00 + r0[2 * j + 1] * s10 + r1[2 * j] * s01 + r1[2 * j + 1] * s11;
    }
  }
}

// Same contraction starting from a pure state |psi><psi| without forming it.
void contract_last_pure(const Eigen::VectorXcd& psi, const Eigen::Matrix2cd& s,
                        std::vector<Complex>& out) {
  const std::size_t half = static_cast<std::size_t>(psi.size()) / 2;
  out.assign(half * half, Complex{});
  for (std::size_t i = 0; i < half; ++i) {
    const Complex p0 = psi(2 * i), p1 = psi(2 * i + 1);
    for (std::size_t j = 0; j < half; ++j) {
      const Complex q0 = std::conj(psi(2 * j)), q1 = std::conj(psi(2 * j + 1));
      out[i * half + j] = p0 * q0 * s(0, 0) + p0 * q1 * s(1, 0) + p1 * q0 * s(0, 1) + p1 * q1 * s(1, 1);
    }
  }
}

std::vector<Complex> to_row_major(const Eigen::MatrixXcd& m) {
  std::vector<Complex> out(static_cast<std::size_t>(m.size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i * m.cols() + j] = m(i, j);
  return out;
}

double dense_correlation(const DenseState& state, std::span<const BlochDirection> setting) {
  const int n = state.n_qubits();
  if (state.is_pure()) {
    Eigen::VectorXcd v = state.amplitudes();
    for (int q = 0; q < n; ++q) apply_pauli(v, n, q, pauli_along(setting[q]));
    return state.amplitudes().dot(v).real();
  }
  std::vector<Complex> cur = to_row_major(state.density()), next;
  std::size_t dim = static_cast<std::size_t>(state.dimension());
  for (int q = n - 1; q >= 0; --q) {
    contract_last(cur, dim, pauli_along(setting[q]), next);
    cur.swap(next);
    dim /= 2;
  }
  return cur[0].real();
}

double dense_moment_design(const DenseState& state, int t) {
  const int n = state.n_qubits();
  const int limit = t == 2 ? kMaxDenseDesignQubitsT2 : kMaxDenseDesignQubitsT4;
  if (n > limit) {
    throw ResourceError("dense design sum for t=" + std::to_string(t) + " is limited to N <= " +
                        std::to_string(limit));
  }
  const auto& axes = design_for_moment(t).axes;
  std::vector<Eigen::Matrix2cd> paulis;
  for (const auto& a : axes) paulis.push_back(pauli_along(a));

  // levels[d] holds the operator left after contracting d + 1 qubits.
  std::vector<std::vector<Complex>> levels(static_cast<std::size_t>(n));
  std::vector<Complex> rho;
  if (!state.is_pure()) rho = to_row_major(state.density());
  const std::size_t dim0 = static_cast<std::size_t>(state.dimension());

  double total = 0.0;
  auto recurse = [&](auto&& self, int depth) -> void {
    const std::size_t dim_in = dim0 >> depth;
    for (const auto& s : paulis) {
      if (depth == 0) {
        if (state.is_pure()) {
          contract_last_pure(state.amplitudes(), s, levels[0]);
        } else {
          contract_last(rho, dim0, s, levels[0]);
        }
      } else {
        contract_last(levels[depth - 1], dim_in, s, levels[depth]);
      }
      if (depth == n - 1) {
        total += ipow(levels[depth][0].real(), t);
      } else {
        self(self, depth + 1);
      }
    }
  };
  recurse(recurse, 0);
  return total / ipow(static_cast<double>(axes.size()), n);
}

// Design sum of E^t for GHZ_m over the axis product set, factorized per qubit.
// With c = [m even], X = prod cos, Y = prod sin, Phi = sum phi:
//   E^t = sum_j C(t,j) c^j X^j (Y cos Phi)^(t-j),
//   (Y cos Phi)^s = 2^-s sum_l C(s,l) prod_n (x_n + i y_n)^l (x_n - i y_n)^(s-l).
double ghz_design_moment(int m, int t, const std::vector<BlochDirection>& axes) {
  const double c = (m % 2 == 0) ? 1.0 : 0.0;
  auto binom = [](int a, int b) {
    double r = 1.0;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  double total = 0.0;
  for (int j = 0; j <= t; ++j) {
    if (j > 0 && c == 0.0) continue;
    const int s = t - j;
    for (int l = 0; l <= s; ++l) {
      Complex w{};
      for (const auto& u : axes) {
        const Complex plus(u.x, u.y), minus(u.x, -u.y);
        w += ipow(u.z, j) * std::pow(plus, l) * std::pow(minus, s - l);
      }
      w /= static_cast<double>(axes.size());
      const Complex term = std::pow(w, m);
      total += binom(t, j) * binom(s, l) * std::ldexp(1.0, -s) * term.real();
    }
  }
  return total;
}

double block_design_moment(const Block& b, int t, const std::vector<BlochDirection>& axes) {
  if (b.kind == BlockKind::SingleQubitPure) {
    double acc = 0.0;
    for (const auto& u : axes) acc += ipow(u.z, t);
    return acc / static_cast<double>(axes.size());
  }
  return ghz_design_moment(b.size, t, axes);
}

double block_product_correlation(const BlockProduct& state, std::span<const BlochDirection> setting) {
  double e = 1.0;
  std::size_t offset = 0;
  for (const auto& b : state.blocks()) {
    const auto sub = setting.subspan(offset, static_cast<std::size_t>(b.size));
    e *= b.kind == BlockKind::SingleQubitPure ? sub[0].z : ghz_correlation(sub);
    offset += static_cast<std::size_t>(b.size);
  }
  return e;
}

}  // namespace

const SphericalDesign& pauli_design() {
  static const SphericalDesign d = make_pauli_design();
  return d;
}

const SphericalDesign& icosahedron_design() {
  static const SphericalDesign d = make_icosahedron_design();
  return d;
}

const SphericalDesign& design_for_moment(int t) {
  require_moment_order(t);
  return t == 2 ? pauli_design() : icosahedron_design();
}

double sphere_monomial_average(int a, int b, int c) {
  if (a % 2 || b % 2 || c % 2) return 0.0;
  return double_factorial(a - 1) * double_factorial(b - 1) * double_factorial(c - 1) /
         double_factorial(a + b + c + 1);
}

double design_error(const SphericalDesign& design, int degree) {
  double worst = 0.0;
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b)
      for (int c = 0; a + b + c <= degree; ++c) {
        double avg = 0.0;
        for (const auto& u : design.points) avg += ipow(u.x, a) * ipow(u.y, b) * ipow(u.z, c);
        avg /= static_cast<double>(design.points.size());
        worst = std::max(worst, std::abs(avg - sphere_monomial_average(a, b, c)));
      }
  return worst;
}

Eigen::Matrix2cd pauli_along(const BlochDirection& u) {
  Eigen::Matrix2cd s;
  s << Complex(u.z, 0.0), Complex(u.x, -u.y), Complex(u.x, u.y), Complex(-u.z, 0.0);
  return s;
}

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

BlochDirection sample_direction(std::mt19937_64& rng) {
  const double z = 2.0 * uniform_unit(rng) - 1.0;
  const double phi = 2.0 * std::numbers::pi * uniform_unit(rng);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return BlochDirection{r * std::cos(phi), r * std::sin(phi), z};
}

double ghz_correlation(std::span<const BlochDirection> setting) {
  // E = [N even] prod cos(theta_n) + prod sin(theta_n) cos(sum phi_n)
  double prod_z = 1.0;
  Complex prod_xy(1.0, 0.0);
  for (const auto& u : setting) {
    prod_z *= u.z;
    prod_xy *= Complex(u.x, u.y);
  }
  const double even = setting.size() % 2 == 0 ? 1.0 : 0.0;
  return even * prod_z + prod_xy.real();
}

double correlation(const StateModel& state, std::span<const BlochDirection> setting) {
  const int n = n_qubits(state);
  if (static_cast<int>(setting.size()) != n) {
    throw ValidationError("setting has " + std::to_string(setting.size()) +
                          " directions for an N=" + std::to_string(n) + " state");
  }
  for (const auto& u : setting) (void)BlochDirection::make(u.x, u.y, u.z);
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NoisyGhz>) {
          return (1.0 - s.p) * ghz_correlation(setting);
        } else if constexpr (std::is_same_v<T, BlockProduct>) {
          return block_product_correlation(s, setting);
        } else {
          return dense_correlation(s, setting);
        }
      },
      state);
}

double moment_design(const StateModel& state, int t) {
  require_moment_order(t);
  const auto& axes = design_for_moment(t).axes;
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NoisyGhz>) {
          return ipow(1.0 - s.p, t) * ghz_design_moment(s.n_qubits, t, axes);
        } else if constexpr (std::is_same_v<T, BlockProduct>) {
          double r = 1.0;
          for (const auto& b : s.blocks()) r *= block_design_moment(b, t, axes);
          return r;
        } else {
          return dense_moment_design(s, t);
        }
      },
      state);
}

Rational ghz_moment_closed(int n_qubits, int t) {
  require_moment_order(t);
  if (n_qubits < 1) throw ValidationError("number of qubits must be >= 1");
  const auto n = static_cast<unsigned long>(n_qubits);
  const bool even = n_qubits % 2 == 0;
  if (t == 2) {
    Rational num = Rational::power(2, n - 1);
    if (even) num += Rational(1);
    return num / Rational::power(3, n);
  }
  Rational num = Rational(3) * Rational::power(8, n - 1);
  if (even) num += Rational::power(3, n) + Rational(3) * Rational::power(2, n);
  return num / Rational::power(15, n);
}

double noisy_ghz_r2(int n_qubits, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("noise p must lie in [0, 1]");
  return (1.0 - p) * (1.0 - p) * ghz_moment_closed(n_qubits, 2).to_double();
}

Rational bell_product_r4(int n_qubits) {
  if (n_qubits < 2 || n_qubits % 2 != 0) {
    throw ValidationError("Bell products need an even N >= 2, got " + std::to_string(n_qubits));
  }
  return Rational(1) / Rational::power(5, static_cast<unsigned long>(n_qubits / 2));
}

MonteCarloMoment monte_carlo_moment(const StateModel& state, int t, long samples,
                                    std::uint64_t seed) {
  if (t < 1) throw ValidationError("moment order must be >= 1");
  if (samples < 2) throw ValidationError("need at least two samples");
  std::mt19937_64 rng(seed);
  const int n = n_qubits(state);
  std::vector<BlochDirection> setting(static_cast<std::size_t>(n));
  double sum = 0.0, sum2 = 0.0;
  for (long i = 0; i < samples; ++i) {
    for (auto& u : setting) u = sample_direction(rng);
    const double v = ipow(correlation(state, setting), t);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / static_cast<double>(samples);
  const double var = (sum2 / static_cast<double>(samples) - mean * mean) *
                     static_cast<double>(samples) / static_cast<double>(samples - 1);
  return {mean, std::sqrt(std::max(var, 0.0) / static_cast<double>(samples)), samples};
}

}  // namespace rmcert
