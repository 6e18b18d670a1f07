#include "martlab/result_table.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace martlab {

void ResultTable::add(std::string statistic, double value, double lo,
                      double hi, bool pass, std::string param_json) {
  ResultRow r;
  r.statistic = std::move(statistic);
  r.value = value;
  r.bracket_lo = lo;
  r.bracket_hi = hi;
  r.pass = pass;
  r.param_json = std::move(param_json);
  rows_.push_back(std::move(r));
}

void ResultTable::append(const ResultTable& other) {
  rows_.insert(rows_.end(), other.rows_.begin(), other.rows_.end());
}

void ResultTable::stamp(const std::string& experiment,
                        const std::string& config_hash, std::uint64_t seed) {
  for (auto& r : rows_) {
    r.experiment = experiment;
    r.config_hash = config_hash;
    r.seed = seed;
  }
}

bool ResultTable::all_pass() const {
  for (const auto& r : rows_)
    if (!r.pass) return false;
  return true;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string ResultTable::to_csv() const {
  std::string out =
      "experiment,config_hash,seed,param_json,statistic,value,bracket_lo,"
      "bracket_hi,pass\n";
  for (const auto& r : rows_) {
    out += csv_field(r.experiment);
    out += ',';
    out += csv_field(r.config_hash);
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    out += csv_field(r.param_json);
    out += ',';
    out += csv_field(r.statistic);
    out += ',';
    out += format_double(r.value);
    out += ',';
    out += format_double(r.bracket_lo);
    out += ',';
    out += format_double(r.bracket_hi);
    out += ',';
    out += r.pass ? "true" : "false";
    out += '\n';
  }
  return out;
}

std::string ResultTable::to_jsonl(const std::string& timestamp) const {
  std::string out;
  for (const auto& r : rows_) {
    nlohmann::json j;
    j["experiment"] = r.experiment;
    j["config_hash"] = r.config_hash;
    j["seed"] = r.seed;
    j["param"] = nlohmann::json::parse(r.param_json.empty() ? "{}"
                                                            : r.param_json);
    j["statistic"] = r.statistic;
    j["value"] = r.value;
    j["bracket_lo"] = r.bracket_lo;
    j["bracket_hi"] = r.bracket_hi;
    j["pass"] = r.pass;
    j["timestamp"] = timestamp;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string now_iso8601() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace martlab
