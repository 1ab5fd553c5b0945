#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace smlab::lab {

inline constexpr int kSchemaVersion = 1;

struct Check {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  std::string relation;  // "abs": |value - expected| <= tol; "le": value <= expected + tol; "ge": value >= expected - tol
  bool pass = false;
};

struct CsvTable {
  std::string file;
  std::string description;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Report {
  std::string experiment;
  nlohmann::json config;
  std::vector<Check> checks;
  std::vector<std::pair<std::string, double>> truncation;  // window-convergence deltas
  std::vector<std::string> notes;
  std::vector<CsvTable> tables;

  void check_abs(const std::string& name, double value, double expected, double tol);
  void check_le(const std::string& name, double value, double bound, double tol = 0.0);
  void check_ge(const std::string& name, double value, double bound, double tol = 0.0);
  void check_true(const std::string& name, bool ok);
  void note(std::string text) { notes.push_back(std::move(text)); }

  /// Appends another report's checks, deltas, notes and tables under `prefix/`.
  void merge(const Report& sub, const std::string& prefix);

  bool pass() const;
  size_t failures() const;
  nlohmann::json to_json() const;
  /// Pretty-printed JSON with a trailing newline; byte-stable for equal reports.
  std::string dump() const;
};

Report report_from_json(const nlohmann::json& j);

/// 17 significant digits, '\n' line ends.
std::string csv_text(const CsvTable& t);

/// Writes report.json and one CSV per table into dir (created if missing).
void write_outputs(const Report& r, const std::string& dir);

}  // namespace smlab::lab
