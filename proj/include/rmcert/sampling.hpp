#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rmcert/estimation.hpp"
#include "rmcert/moments.hpp"
#include "rmcert/states.hpp"

namespace rmcert {

struct MeasurementSetting {
  std::int64_t setting_id = 0;
  std::vector<BlochDirection> directions;
};

enum class RecordMode { Full, Compact };

std::string mode_name(RecordMode mode);
RecordMode parse_mode(const std::string& text);

/// Outcomes of K shots under one setting. Full records keep every outcome
/// tuple (K x N values of +-1, row-major); compact records keep x_count only.
struct ShotRecord {
  MeasurementSetting setting;
  RecordMode mode = RecordMode::Compact;
  long k_shots = 0;
  long x_count = 0;
  std::vector<std::int8_t> outcomes;

  int n_qubits() const { return static_cast<int>(setting.directions.size()); }
  int outcome(long shot, int qubit) const;
  std::span<const std::int8_t> shot(long index) const;

  SettingStats stats() const { return {k_shots, x_count}; }
  /// Correlation counts restricted to a subset of qubits; full mode only.
  SettingStats stats(std::span<const std::size_t> subset) const;

  /// Throws ValidationError if x_count disagrees with the stored outcomes.
  void check() const;
};

enum class SamplerPath { Auto, Dense, Chain, Binomial };

std::string path_name(SamplerPath path);
SamplerPath parse_path(const std::string& text);

/// Independent stream for one setting, keyed by (seed, setting_id).
std::mt19937_64 setting_stream(std::uint64_t seed, std::int64_t setting_id);

/// N directions drawn uniformly from the sphere.
MeasurementSetting sample_setting(int n_qubits, std::mt19937_64& rng, std::int64_t setting_id = 0);

/// Draws K shots under the Born rule. Auto picks Binomial for compact
/// records, Chain for GHZ-family states and Dense otherwise.
ShotRecord sample_shots(const StateModel& state, const MeasurementSetting& setting, long k_shots,
                        std::mt19937_64& rng, RecordMode mode,
                        SamplerPath path = SamplerPath::Auto);

/// Outcome probabilities of all 2^N strings (qubit 0 is the most significant
/// bit; bit value 0 means outcome +1).
std::vector<double> outcome_distribution(const StateModel& state,
                                         std::span<const BlochDirection> setting);

struct ExperimentOptions {
  long m_settings = 1;
  long k_shots = 1;
  std::uint64_t seed = 0;
  RecordMode mode = RecordMode::Compact;
  SamplerPath path = SamplerPath::Auto;
  /// 0 means one worker per hardware thread.
  unsigned threads = 1;
};

/// M records ordered by setting id; identical for any thread count.
std::vector<ShotRecord> run_experiment(const StateModel& state, const ExperimentOptions& options);

std::vector<SettingStats> to_stats(std::span<const ShotRecord> records);

}  // namespace rmcert
