#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rmcert/sampling.hpp"

namespace rmcert {

inline constexpr int kRecordFormatVersion = 1;

struct RecordHeader {
  int version = kRecordFormatVersion;
  int n_qubits = 0;
  long k_shots = 0;
  RecordMode mode = RecordMode::Compact;
  std::uint64_t seed = 0;
  std::string state_descriptor;
};

struct RecordFile {
  RecordHeader header;
  std::vector<ShotRecord> records;
};

// One JSON object per line: the header first, then one line per setting.
std::string header_line(const RecordHeader& header);
std::string record_line(const ShotRecord& record);

void write_records(std::ostream& out, const RecordHeader& header,
                   const std::vector<ShotRecord>& records);
void write_records_file(const std::string& path, const RecordHeader& header,
                        const std::vector<ShotRecord>& records);

/// Parses and validates a record stream. Errors carry the 1-based line number
/// and the offending field.
RecordFile read_records(std::istream& in);
RecordFile read_records_file(const std::string& path);

}  // namespace rmcert
