#include "rmcert/records.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "rmcert/errors.hpp"

namespace rmcert {

using nlohmann::json;

namespace {

const json& field(const json& obj, const char* name, std::size_t line) {
  auto it = obj.find(name);
  if (it == obj.end()) throw IngestionError(line, std::string("missing field '") + name + "'");
  return *it;
}

template <class T>
T integer_field(const json& obj, const char* name, std::size_t line) {
  const json& v = field(obj, name, line);
  if (!v.is_number_integer()) {
    throw IngestionError(line, std::string("field '") + name + "' must be an integer");
  }
  return v.get<T>();
}

std::string string_field(const json& obj, const char* name, std::size_t line) {
  const json& v = field(obj, name, line);
  if (!v.is_string()) throw IngestionError(line, std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

RecordHeader parse_header(const json& h, std::size_t line) {
  RecordHeader header;
  header.version = integer_field<int>(h, "version", line);
  if (header.version != kRecordFormatVersion) {
    throw IngestionError(line, "field 'version': unsupported record format version " +
                                   std::to_string(header.version));
  }
  header.n_qubits = integer_field<int>(h, "n_qubits", line);
  if (header.n_qubits < 1) throw IngestionError(line, "field 'n_qubits' must be >= 1");
  header.k_shots = integer_field<long>(h, "k_shots", line);
  if (header.k_shots < 1) throw IngestionError(line, "field 'k_shots' must be >= 1");
  try {
    header.mode = parse_mode(string_field(h, "mode", line));
  } catch (const ValidationError& e) {
    throw IngestionError(line, std::string("field 'mode': ") + e.what());
  }
  header.seed = integer_field<std::uint64_t>(h, "seed", line);
  header.state_descriptor = string_field(h, "state_descriptor", line);
  return header;
}

ShotRecord parse_record(const json& r, const RecordHeader& header, std::size_t line) {
  ShotRecord rec;
  rec.setting.setting_id = integer_field<std::int64_t>(r, "setting_id", line);
  const json& bloch = field(r, "bloch", line);
  if (!bloch.is_array() || static_cast<int>(bloch.size()) != header.n_qubits) {
    throw IngestionError(line, "field 'bloch' must hold N = " + std::to_string(header.n_qubits) +
                                   " direction triples");
  }
  for (const auto& t : bloch) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number() || !t[1].is_number() ||
        !t[2].is_number()) {
      throw IngestionError(line, "field 'bloch': each direction must be [x, y, z]");
    }
    try {
      rec.setting.directions.push_back(
          BlochDirection::make(t[0].get<double>(), t[1].get<double>(), t[2].get<double>()));
    } catch (const ValidationError& e) {
      throw IngestionError(line, std::string("field 'bloch': ") + e.what());
    }
  }
  rec.mode = header.mode;
  rec.k_shots = header.k_shots;
  if (header.mode == RecordMode::Compact) {
    if (r.contains("outcomes")) throw IngestionError(line, "field 'outcomes' not allowed in compact mode");
    rec.x_count = integer_field<long>(r, "x_count", line);
    const long k = integer_field<long>(r, "k", line);
    if (k != header.k_shots) {
      throw IngestionError(line, "field 'k' = " + std::to_string(k) + " differs from header k_shots = " +
                                     std::to_string(header.k_shots));
    }
    if (rec.x_count < 0 || rec.x_count > k) throw IngestionError(line, "field 'x_count' outside [0, k]");
    return rec;
  }
  const json& outs = field(r, "outcomes", line);
  if (!outs.is_array() || static_cast<long>(outs.size()) != header.k_shots) {
    throw IngestionError(line, "field 'outcomes' must hold K = " + std::to_string(header.k_shots) +
                                   " tuples");
  }
  rec.outcomes.reserve(static_cast<std::size_t>(header.k_shots * header.n_qubits));
  long y = 0;
  for (const auto& tuple : outs) {
    if (!tuple.is_array() || static_cast<int>(tuple.size()) != header.n_qubits) {
      throw IngestionError(line, "field 'outcomes': each tuple must hold N values");
    }
    int x = 1;
    for (const auto& v : tuple) {
      if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1)) {
        throw IngestionError(line, "field 'outcomes': values must be +1 or -1");
      }
      const int o = v.get<int>();
      rec.outcomes.push_back(static_cast<std::int8_t>(o));
      x *= o;
    }
    if (x == 1) ++y;
  }
  rec.x_count = y;
  if (r.contains("x_count") && r["x_count"] != y) {
    throw IngestionError(line, "field 'x_count' disagrees with the outcome tuples");
  }
  return rec;
}

}  // namespace

std::string header_line(const RecordHeader& header) {
  json h;
  h["version"] = header.version;
  h["n_qubits"] = header.n_qubits;
  h["k_shots"] = header.k_shots;
  h["mode"] = mode_name(header.mode);
  h["seed"] = header.seed;
  h["state_descriptor"] = header.state_descriptor;
  return h.dump();
}

std::string record_line(const ShotRecord& record) {
  json r;
  r["setting_id"] = record.setting.setting_id;
  json bloch = json::array();
  for (const auto& u : record.setting.directions) bloch.push_back({u.x, u.y, u.z});
  r["bloch"] = std::move(bloch);
  if (record.mode == RecordMode::Compact) {
    r["x_count"] = record.x_count;
    r["k"] = record.k_shots;
  } else {
    json outs = json::array();
    const int n = record.n_qubits();
    for (long s = 0; s < record.k_shots; ++s) {
      json tuple = json::array();
      for (int q = 0; q < n; ++q) tuple.push_back(record.outcome(s, q));
      outs.push_back(std::move(tuple));
    }
    r["outcomes"] = std::move(outs);
  }
  return r.dump();
}

void write_records(std::ostream& out, const RecordHeader& header,
                   const std::vector<ShotRecord>& records) {
  out << header_line(header) << '\n';
  for (const auto& r : records) out << record_line(r) << '\n';
}

void write_records_file(const std::string& path, const RecordHeader& header,
                        const std::vector<ShotRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  write_records(out, header, records);
  if (!out) throw ValidationError("failed writing '" + path + "'");
}

RecordFile read_records(std::istream& in) {
  RecordFile file;
  std::string text;
  std::size_t line = 0;
  bool have_header = false;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.empty()) continue;
    json obj;
    try {
      obj = json::parse(text);
    } catch (const json::parse_error& e) {
      throw IngestionError(line, std::string("not valid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw IngestionError(line, "expected a JSON object");
    try {
      if (!have_header) {
        file.header = parse_header(obj, line);
        have_header = true;
      } else {
        file.records.push_back(parse_record(obj, file.header, line));
      }
    } catch (const json::exception& e) {
      throw IngestionError(line, e.what());
    }
  }
  if (!have_header) throw IngestionError(line == 0 ? 1 : line, "missing header line");
  return file;
}

RecordFile read_records_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestionError(0, "cannot open '" + path + "'");
  return read_records(in);
}

}  // namespace rmcert
