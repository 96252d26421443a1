#include <doctest.h>

#include <sstream>

#include "rmcert/errors.hpp"
#include "rmcert/records.hpp"

using namespace rmcert;

namespace {

RecordFile make_file(RecordMode mode) {
  const StateModel state = make_noisy_ghz(3, 0.1);
  ExperimentOptions opt;
  opt.m_settings = 5;
  opt.k_shots = 8;
  opt.seed = 42;
  opt.mode = mode;
  RecordFile f;
  f.header = {kRecordFormatVersion, 3, 8, mode, 42, describe(state)};
  f.records = run_experiment(state, opt);
  return f;
}

std::string serialize(const RecordFile& f) {
  std::ostringstream out;
  write_records(out, f.header, f.records);
  return out.str();
}

std::size_t error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_records(in);
  } catch (const IngestionError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("records round trip bit for bit") {
  for (auto mode : {RecordMode::Full, RecordMode::Compact}) {
    const auto f = make_file(mode);
    const std::string text = serialize(f);
    std::istringstream in(text);
    const auto back = read_records(in);
    CHECK(back.header.seed == 42);
    CHECK(back.header.mode == mode);
    REQUIRE(back.records.size() == f.records.size());
    for (std::size_t i = 0; i < f.records.size(); ++i) {
      CHECK(back.records[i].x_count == f.records[i].x_count);
      CHECK(back.records[i].outcomes == f.records[i].outcomes);
      for (int q = 0; q < 3; ++q) {
        CHECK(back.records[i].setting.directions[q].x == f.records[i].setting.directions[q].x);
      }
    }
    CHECK(serialize(back) == text);
  }
}

TEST_CASE("malformed input reports the failing line") {
  const std::string good = serialize(make_file(RecordMode::Full));
  std::vector<std::string> lines;
  std::istringstream in(good);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  auto join = [](const std::vector<std::string>& ls) {
    std::string s;
    for (const auto& l : ls) s += l + "\n";
    return s;
  };

  auto broken = lines;
  broken[2] = "{not json";
  CHECK(error_line(join(broken)) == 3);

  broken = lines;
  broken[0].replace(broken[0].find("\"k_shots\""), 9, "\"k_shotz\"");
  CHECK(error_line(join(broken)) == 1);

  broken = lines;
  const auto pos = broken[4].find("\"x_count\":");
  broken[4].insert(pos + 10, "9");
  CHECK(error_line(join(broken)) == 5);

  CHECK(error_line("") == 1);
}

TEST_CASE("compact files cannot carry outcomes") {
  const std::string good = serialize(make_file(RecordMode::Compact));
  const auto first_nl = good.find('\n');
  std::string text = good.substr(0, first_nl + 1) +
                     R"({"setting_id":0,"bloch":[[0,0,1],[0,0,1],[0,0,1]],"x_count":1,"k":8,"outcomes":[]})" + "\n";
  CHECK(error_line(text) == 2);
}
