#include "rmcert/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

#include "rmcert/errors.hpp"

namespace rmcert {

namespace {

// Rows are <u+| and <u-|, with |u+> = cos(t/2)|0> + e^{i phi} sin(t/2)|1>.
struct LocalBasis {
  double c = 1.0;
  double s = 0.0;
  Complex phase{1.0, 0.0};  // e^{-i phi}

  explicit LocalBasis(const BlochDirection& u) {
    c = std::sqrt(std::max(0.0, (1.0 + u.z) / 2.0));
    s = std::sqrt(std::max(0.0, (1.0 - u.z) / 2.0));
    const double r = std::hypot(u.x, u.y);
    if (r > 0.0) phase = Complex(u.x / r, -u.y / r);
  }

  // <u_out|0> and <u_out|1> for out = 0 (+1) or 1 (-1).
  Complex a(int out) const { return out == 0 ? Complex(c, 0.0) : Complex(s, 0.0); }
  Complex b(int out) const { return out == 0 ? phase * s : -phase * c; }
};

void rotate_vector(Eigen::VectorXcd& v, int n, int q, const LocalBasis& w) {
  const Eigen::Index stride = Eigen::Index{1} << (n - 1 - q);
  const Complex w00 = w.a(0), w01 = w.b(0), w10 = w.a(1), w11 = w.b(1);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i & stride) continue;
    const Eigen::Index j = i | stride;
    const Complex x = v(i), y = v(j);
    v(i) = w00 * x + w01 * y;
    v(j) = w10 * x + w11 * y;
  }
}

std::vector<double> pure_distribution(Eigen::VectorXcd psi, std::span<const BlochDirection> setting) {
  const int n = static_cast<int>(setting.size());
  for (int q = 0; q < n; ++q) rotate_vector(psi, n, q, LocalBasis(setting[q]));
  std::vector<double> probs(static_cast<std::size_t>(psi.size()));
  for (Eigen::Index i = 0; i < psi.size(); ++i) probs[i] = std::norm(psi(i));
  return probs;
}

std::vector<double> mixed_distribution(Eigen::MatrixXcd rho, std::span<const BlochDirection> setting) {
  const int n = static_cast<int>(setting.size());
  for (int q = 0; q < n; ++q) {
    const LocalBasis w(setting[q]);
    Eigen::Matrix2cd m;
    m << w.a(0), w.b(0), w.a(1), w.b(1);
    const Eigen::Index stride = Eigen::Index{1} << (n - 1 - q);
    // rows: rho <- W rho
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
      if (i & stride) continue;
      const Eigen::Index j = i | stride;
      const Eigen::RowVectorXcd x = rho.row(i), y = rho.row(j);
      rho.row(i) = m(0, 0) * x + m(0, 1) * y;
      rho.row(j) = m(1, 0) * x + m(1, 1) * y;
    }
    // columns: rho <- rho W^dagger
    for (Eigen::Index i = 0; i < rho.cols(); ++i) {
      if (i & stride) continue;
      const Eigen::Index j = i | stride;
      const Eigen::VectorXcd x = rho.col(i), y = rho.col(j);
      rho.col(i) = std::conj(m(0, 0)) * x + std::conj(m(0, 1)) * y;
      rho.col(j) = std::conj(m(1, 0)) * x + std::conj(m(1, 1)) * y;
    }
  }
  std::vector<double> probs(static_cast<std::size_t>(rho.rows()));
  for (Eigen::Index i = 0; i < rho.rows(); ++i) probs[i] = std::max(0.0, rho(i, i).real());
  return probs;
}

void write_index(std::int8_t* out, int n, std::size_t index) {
  for (int q = 0; q < n; ++q) {
    out[q] = ((index >> (n - 1 - q)) & 1U) ? std::int8_t{-1} : std::int8_t{1};
  }
}

void uniform_bits(std::int8_t* out, int n, std::mt19937_64& rng) {
  for (int q = 0; q < n; ++q) out[q] = uniform_unit(rng) < 0.5 ? std::int8_t{1} : std::int8_t{-1};
}

// Sequential sampling of a GHZ block in the rank-2 representation
// <s|GHZ> ~ prod a_n(s_n) + prod b_n(s_n).
void chain_ghz(std::int8_t* out, std::span<const LocalBasis> basis, std::mt19937_64& rng) {
  Complex alpha(1.0, 0.0), beta(1.0, 0.0);
  const std::size_t m = basis.size();
  for (std::size_t n = 0; n < m; ++n) {
    const auto& w = basis[n];
    double p0 = 0.0, p1 = 0.0;
    if (n + 1 < m) {
      p0 = std::norm(alpha * w.a(0)) + std::norm(beta * w.b(0));
      p1 = std::norm(alpha * w.a(1)) + std::norm(beta * w.b(1));
    } else {
      p0 = std::norm(alpha * w.a(0) + beta * w.b(0));
      p1 = std::norm(alpha * w.a(1) + beta * w.b(1));
    }
    const int bit = uniform_unit(rng) * (p0 + p1) < p0 ? 0 : 1;
    out[n] = bit == 0 ? std::int8_t{1} : std::int8_t{-1};
    alpha *= w.a(bit);
    beta *= w.b(bit);
    const double scale = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (scale > 0.0) {
      alpha /= scale;
      beta /= scale;
    }
  }
}

bool chain_supported(const StateModel& state) {
  return !std::holds_alternative<DenseState>(state);
}

void chain_shot(const StateModel& state, std::span<const LocalBasis> basis,
                std::span<const BlochDirection> setting, std::int8_t* out, std::mt19937_64& rng) {
  const int n = static_cast<int>(basis.size());
  if (const auto* noisy = std::get_if<NoisyGhz>(&state)) {
    if (noisy->p > 0.0 && uniform_unit(rng) < noisy->p) {
      uniform_bits(out, n, rng);
    } else {
      chain_ghz(out, basis, rng);
    }
    return;
  }
  const auto& blocks = std::get<BlockProduct>(state).blocks();
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    const auto size = static_cast<std::size_t>(b.size);
    if (b.kind == BlockKind::SingleQubitPure) {
      out[offset] = uniform_unit(rng) < (1.0 + setting[offset].z) / 2.0 ? std::int8_t{1}
                                                                       : std::int8_t{-1};
    } else {
      chain_ghz(out + offset, basis.subspan(offset, size), rng);
    }
    offset += size;
  }
}

void require_setting(const StateModel& state, const MeasurementSetting& setting) {
  const int n = n_qubits(state);
  if (static_cast<int>(setting.directions.size()) != n) {
    throw ValidationError("setting has " + std::to_string(setting.directions.size()) +
                          " directions for an N=" + std::to_string(n) + " state");
  }
  for (const auto& u : setting.directions) (void)BlochDirection::make(u.x, u.y, u.z);
}

}  // namespace

std::string mode_name(RecordMode mode) { return mode == RecordMode::Full ? "full" : "compact"; }

RecordMode parse_mode(const std::string& text) {
  if (text == "full") return RecordMode::Full;
  if (text == "compact") return RecordMode::Compact;
  throw ValidationError("record mode must be 'full' or 'compact', got '" + text + "'");
}

std::string path_name(SamplerPath path) {
  switch (path) {
    case SamplerPath::Auto:
      return "auto";
    case SamplerPath::Dense:
      return "dense";
    case SamplerPath::Chain:
      return "chain";
    case SamplerPath::Binomial:
      return "binomial";
  }
  return "auto";
}

SamplerPath parse_path(const std::string& text) {
  for (auto p : {SamplerPath::Auto, SamplerPath::Dense, SamplerPath::Chain, SamplerPath::Binomial}) {
    if (path_name(p) == text) return p;
  }
  throw ValidationError("sampler path must be auto, dense, chain or binomial, got '" + text + "'");
}

int ShotRecord::outcome(long shot_index, int qubit) const {
  if (mode != RecordMode::Full) throw ValidationError("full mode required for individual outcomes");
  return outcomes[static_cast<std::size_t>(shot_index) * static_cast<std::size_t>(n_qubits()) +
                  static_cast<std::size_t>(qubit)];
}

std::span<const std::int8_t> ShotRecord::shot(long index) const {
  if (mode != RecordMode::Full) throw ValidationError("full mode required for individual outcomes");
  const auto n = static_cast<std::size_t>(n_qubits());
  return std::span<const std::int8_t>(outcomes).subspan(static_cast<std::size_t>(index) * n, n);
}

SettingStats ShotRecord::stats(std::span<const std::size_t> subset) const {
  if (mode != RecordMode::Full) {
    throw ValidationError("full mode required for marginal moments (record stores x_count only)");
  }
  std::vector<int> tuple(static_cast<std::size_t>(n_qubits()));
  long y = 0;
  for (long s = 0; s < k_shots; ++s) {
    const auto row = shot(s);
    std::copy(row.begin(), row.end(), tuple.begin());
    if (correlation_sample(tuple, subset) == 1) ++y;
  }
  return {k_shots, y};
}

void ShotRecord::check() const {
  if (k_shots < 1) throw ValidationError("record needs K >= 1");
  if (x_count < 0 || x_count > k_shots) throw ValidationError("x_count outside [0, K]");
  if (mode == RecordMode::Full) {
    const auto n = static_cast<std::size_t>(n_qubits());
    if (outcomes.size() != n * static_cast<std::size_t>(k_shots)) {
      throw ValidationError("full record must hold K tuples of N outcomes");
    }
    long y = 0;
    for (long s = 0; s < k_shots; ++s) {
      int x = 1;
      for (auto r : shot(s)) {
        if (r != 1 && r != -1) throw ValidationError("outcomes must be +1 or -1");
        x *= r;
      }
      if (x == 1) ++y;
    }
    if (y != x_count) throw ValidationError("x_count disagrees with the stored outcome tuples");
  }
}

std::mt19937_64 setting_stream(std::uint64_t seed, std::int64_t setting_id) {
  const auto id = static_cast<std::uint64_t>(setting_id);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(id >> 32)};
  return std::mt19937_64(seq);
}

MeasurementSetting sample_setting(int n_qubits, std::mt19937_64& rng, std::int64_t setting_id) {
  if (n_qubits < 1) throw ValidationError("number of qubits must be >= 1");
  MeasurementSetting s;
  s.setting_id = setting_id;
  s.directions.reserve(static_cast<std::size_t>(n_qubits));
  for (int q = 0; q < n_qubits; ++q) s.directions.push_back(sample_direction(rng));
  return s;
}

std::vector<double> outcome_distribution(const StateModel& state,
                                         std::span<const BlochDirection> setting) {
  const int n = n_qubits(state);
  if (static_cast<int>(setting.size()) != n) throw ValidationError("setting length differs from N");
  if (const auto* noisy = std::get_if<NoisyGhz>(&state)) {
    if (n > kMaxDensePureQubits) {
      throw ResourceError("dense sampler is limited to N <= " + std::to_string(kMaxDensePureQubits));
    }
    auto probs = pure_distribution(ghz_vector(n), setting);
    const double floor = noisy->p / static_cast<double>(probs.size());
    for (auto& pr : probs) pr = (1.0 - noisy->p) * pr + floor;
    return probs;
  }
  if (const auto* blocks = std::get_if<BlockProduct>(&state)) {
    return pure_distribution(densify(*blocks).amplitudes(), setting);
  }
  const auto& dense = std::get<DenseState>(state);
  if (dense.is_pure()) return pure_distribution(dense.amplitudes(), setting);
  return mixed_distribution(dense.density(), setting);
}

ShotRecord sample_shots(const StateModel& state, const MeasurementSetting& setting, long k_shots,
                        std::mt19937_64& rng, RecordMode mode, SamplerPath path) {
  if (k_shots < 1) throw ValidationError("shots per setting K must be >= 1");
  require_setting(state, setting);
  const int n = n_qubits(state);
  if (path == SamplerPath::Auto) {
    if (mode == RecordMode::Compact) {
      path = SamplerPath::Binomial;
    } else {
      path = chain_supported(state) ? SamplerPath::Chain : SamplerPath::Dense;
    }
  }

  ShotRecord rec;
  rec.setting = setting;
  rec.mode = mode;
  rec.k_shots = k_shots;

  if (path == SamplerPath::Binomial) {
    if (mode != RecordMode::Compact) {
      throw ValidationError("binomial sampler only produces compact records");
    }
    const double e = std::clamp(correlation(state, setting.directions), -1.0, 1.0);
    std::binomial_distribution<long> dist(k_shots, (1.0 + e) / 2.0);
    rec.x_count = dist(rng);
    return rec;
  }

  const auto nn = static_cast<std::size_t>(n);
  std::vector<std::int8_t> outcomes(nn * static_cast<std::size_t>(k_shots));
  if (path == SamplerPath::Chain) {
    if (!chain_supported(state)) {
      throw ResourceError("chain sampler needs a noisy-GHZ or block-product state; use the dense sampler (N <= " +
                          std::to_string(kMaxDenseMixedQubits) + ")");
    }
    std::vector<LocalBasis> basis;
    basis.reserve(nn);
    for (const auto& u : setting.directions) basis.emplace_back(u);
    for (long s = 0; s < k_shots; ++s) {
      chain_shot(state, basis, setting.directions, outcomes.data() + static_cast<std::size_t>(s) * nn, rng);
    }
  } else {
    const auto probs = outcome_distribution(state, setting.directions);
    std::vector<double> cdf(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cdf.begin());
    const double total = cdf.back();
    for (long s = 0; s < k_shots; ++s) {
      const double u = uniform_unit(rng) * total;
      auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
      if (it == cdf.end()) --it;
      write_index(outcomes.data() + static_cast<std::size_t>(s) * nn, n,
                  static_cast<std::size_t>(it - cdf.begin()));
    }
  }

  long y = 0;
  for (long s = 0; s < k_shots; ++s) {
    int x = 1;
    for (std::size_t q = 0; q < nn; ++q) x *= outcomes[static_cast<std::size_t>(s) * nn + q];
    if (x == 1) ++y;
  }
  rec.x_count = y;
  if (mode == RecordMode::Full) rec.outcomes = std::move(outcomes);
  return rec;
}

std::vector<ShotRecord> run_experiment(const StateModel& state, const ExperimentOptions& options) {
  if (options.m_settings < 1) throw ValidationError("number of settings M must be >= 1");
  if (options.k_shots < 1) throw ValidationError("shots per setting K must be >= 1");
  const int n = n_qubits(state);
  std::vector<ShotRecord> records(static_cast<std::size_t>(options.m_settings));

  auto work = [&](std::int64_t id) {
    auto rng = setting_stream(options.seed, id);
    const auto setting = sample_setting(n, rng, id);
    records[static_cast<std::size_t>(id)] =
        sample_shots(state, setting, options.k_shots, rng, options.mode, options.path);
  };

  unsigned workers = options.threads == 0 ? std::max(1U, std::thread::hardware_concurrency())
                                          : options.threads;
  workers = static_cast<unsigned>(std::min<long>(workers, options.m_settings));
  if (workers <= 1) {
    for (std::int64_t id = 0; id < options.m_settings; ++id) work(id);
    return records;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::int64_t id = w; id < options.m_settings; id += workers) work(id);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return records;
}

std::vector<SettingStats> to_stats(std::span<const ShotRecord> records) {
  std::vector<SettingStats> out;
  out.reserve(records.size());
  for (const auto& r : records) out.push_back(r.stats());
  return out;
}

}  // namespace rmcert
