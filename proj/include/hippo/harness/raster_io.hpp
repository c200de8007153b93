// Raster CSV files, weight snapshots and readout/report serialization.
//
// Raster layout:
//   # hippo-raster v1
//   # config {"cue_size":5,...}
//   # schedule {"header":...,"ops":[...]}
//   # flags {"forced_timing":false,"truncated":false}
//   # populations INPUT,DG.gate,...
//   # fnv1a64 0123456789abcdef
//   time_ms,population,neuron
//   1,INPUT,2
//
// The hash covers the column header and every data row, newline-terminated.
#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hippo/harness/script.hpp"
#include "hippo/model/readout.hpp"
#include "hippo/oracle/reference_memory.hpp"

namespace hippo::harness {

inline constexpr const char* kRasterMagic = "# hippo-raster v1";
inline constexpr const char* kRasterColumns = "time_ms,population,neuron";

class FnvHash {
 public:
  void update(std::string_view s) {
    for (unsigned char c : s) {
      h_ ^= c;
      h_ *= 0x100000001b3ULL;
    }
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h_));
    return buf;
  }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

struct RasterFile {
  json schedule;  // schedule_to_json layout
  bool forced_timing = false;
  RasterLog raster;
  std::string stored_hash;
  std::string computed_hash;

  bool hash_ok() const { return stored_hash == computed_hash; }
};

inline std::string raster_body(const RasterLog& r) {
  std::string body = std::string(kRasterColumns) + "\n";
  for (const auto& s : r.spikes) {
    body += std::to_string(s.time);
    body += ',';
    body += r.population_names.at(s.population.value);
    body += ',';
    body += std::to_string(s.neuron);
    body += '\n';
  }
  return body;
}

inline std::string format_raster(const RasterLog& r, const OperationSchedule& s, std::uint64_t seed) {
  const auto body = raster_body(r);
  FnvHash h;
  h.update(body);
  const auto sched = schedule_to_json(s, seed);
  std::string names;
  for (std::size_t i = 0; i < r.population_names.size(); ++i)
    names += (i ? "," : "") + r.population_names[i];
  std::ostringstream out;
  out << kRasterMagic << "\n";
  out << "# config " << sched.at("header").dump() << "\n";
  out << "# schedule " << sched.dump() << "\n";
  out << "# flags " << json{{"forced_timing", s.forced_timing()}, {"truncated", r.truncated}}.dump() << "\n";
  out << "# populations " << names << "\n";
  out << "# fnv1a64 " << h.hex() << "\n";
  out << body;
  return out.str();
}

class RasterFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline RasterFile parse_raster(std::istream& in) {
  RasterFile f;
  std::string line;
  if (!std::getline(in, line) || line != kRasterMagic)
    throw RasterFormatError("not a hippo raster (missing '" + std::string(kRasterMagic) + "')");

  auto header_value = [&](const std::string& key) {
    if (!std::getline(in, line) || line.rfind("# " + key + " ", 0) != 0)
      throw RasterFormatError("raster header: expected '# " + key + "'");
    return line.substr(key.size() + 3);
  };
  try {
    header_value("config");
    f.schedule = json::parse(header_value("schedule"));
    const auto flags = json::parse(header_value("flags"));
    f.forced_timing = flags.value("forced_timing", false);
    f.raster.truncated = flags.value("truncated", false);
  } catch (const json::exception& e) {
    throw RasterFormatError(std::string("raster header: ") + e.what());
  }
  {
    std::stringstream names(header_value("populations"));
    std::string n;
    while (std::getline(names, n, ',')) f.raster.population_names.push_back(n);
  }
  f.stored_hash = header_value("fnv1a64");

  if (!std::getline(in, line) || line != kRasterColumns)
    throw RasterFormatError("raster: expected column header '" + std::string(kRasterColumns) + "'");
  FnvHash h;
  h.update(line + "\n");
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    h.update(line + "\n");
    std::stringstream ss(line);
    std::string t, pop, n;
    if (!std::getline(ss, t, ',') || !std::getline(ss, pop, ',') || !std::getline(ss, n))
      throw RasterFormatError("raster row " + std::to_string(row) + ": expected 3 columns");
    const auto id = f.raster.find(pop);
    if (!id) throw RasterFormatError("raster row " + std::to_string(row) + ": unknown population " + pop);
    try {
      f.raster.spikes.push_back({std::stoll(t), *id, static_cast<std::uint32_t>(std::stoul(n))});
    } catch (const std::exception&) {
      throw RasterFormatError("raster row " + std::to_string(row) + ": bad number");
    }
  }
  f.computed_hash = h.hex();
  return f;
}

inline RasterFile read_raster(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RasterFormatError("cannot open " + path);
  return parse_raster(in);
}

inline json weights_to_json(const WeightRecord& w) {
  json rows = json::array();
  for (std::size_t i = 0; i < w.rows; ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < w.cols; ++j) r.push_back(w.at(i, j));
    rows.push_back(std::move(r));
  }
  return json{{"projection", "CA3cue-CA3cont"}, {"rows", w.rows}, {"cols", w.cols}, {"weights", rows}};
}

inline WeightRecord weights_from_json(const json& j) {
  WeightRecord w;
  try {
    w.rows = j.at("rows").get<std::size_t>();
    w.cols = j.at("cols").get<std::size_t>();
    const auto& rows = j.at("weights");
    if (rows.size() != w.rows) throw RasterFormatError("weights: row count mismatch");
    for (const auto& r : rows) {
      if (r.size() != w.cols) throw RasterFormatError("weights: column count mismatch");
      for (const auto& v : r) w.weights.push_back(v.get<double>());
    }
  } catch (const json::exception& e) {
    throw RasterFormatError(std::string("weights: ") + e.what());
  }
  return w;
}

inline json readout_to_json(const MemoryReadout& r) {
  json j{{"kind", to_string(r.kind)},
         {"cue", r.cue},
         {"cue_out_time", r.cue_out_time},
         {"content_out_time", r.content_out_time},
         {"content", r.content}};
  if (!r.forgotten.empty()) j["erased"] = r.forgotten;
  return j;
}

inline json report_to_json(const oracle::ExpectationReport& rep) {
  json checks = json::array();
  for (const auto& c : rep.checks) {
    json j{{"op", c.index}, {"kind", to_string(c.op)}, {"match", c.match},
           {"expected", readout_to_json(c.expected)}};
    if (c.observed) {
      j["observed"] = readout_to_json(*c.observed);
      j["timing_delta"] = c.timing_delta;
    }
    if (!c.match) j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  return json{{"expected", rep.expected_count}, {"observed", rep.observed_count},
              {"matched", rep.matched},         {"mismatched", rep.mismatched},
              {"length_mismatch", rep.length_mismatch()},
              {"all_match", rep.all_match()},   {"checks", checks}};
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace hippo::harness
