#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace martlab {

struct ResultRow {
  std::string experiment;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string param_json;  // compact JSON of row-specific parameters
  std::string statistic;
  double value = 0.0;
  double bracket_lo = 0.0;  // the interval value must lie in for pass
  double bracket_hi = 0.0;
  bool pass = true;
};

// Flat result set; serializes to the fixed-column CSV contract
// (experiment, config_hash, seed, param_json, statistic, value, bracket_lo,
// bracket_hi, pass) and to JSONL (which additionally carries a timestamp).
class ResultTable {
 public:
  void add(std::string statistic, double value, double lo, double hi,
           bool pass, std::string param_json = "{}");
  void append(const ResultTable& other);
  // fills experiment/config_hash/seed on every row
  void stamp(const std::string& experiment, const std::string& config_hash,
             std::uint64_t seed);

  const std::vector<ResultRow>& rows() const { return rows_; }
  bool all_pass() const;

  std::string to_csv() const;
  std::string to_jsonl(const std::string& timestamp) const;

 private:
  std::vector<ResultRow> rows_;
};

// Serialize a double so that equal values always produce equal text.
std::string format_double(double v);

// ISO-8601 UTC timestamp of now.
std::string now_iso8601();

// Write via temp file + rename so readers never observe partial content.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace martlab
