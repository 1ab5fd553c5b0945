#include "smlab/lab/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "smlab/error.hpp"

namespace smlab::lab {

namespace {

void push(Report& r, const std::string& name, double value, double expected, double tol, const char* rel, bool pass) {
  // NaN never passes
  r.checks.push_back({name, value, expected, tol, rel, pass && !std::isnan(value)});
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void Report::check_abs(const std::string& name, double value, double expected, double tol) {
  push(*this, name, value, expected, tol, "abs", std::abs(value - expected) <= tol);
}

void Report::check_le(const std::string& name, double value, double bound, double tol) {
  push(*this, name, value, bound, tol, "le", value <= bound + tol);
}

void Report::check_ge(const std::string& name, double value, double bound, double tol) {
  push(*this, name, value, bound, tol, "ge", value >= bound - tol);
}

void Report::check_true(const std::string& name, bool ok) { push(*this, name, ok ? 1.0 : 0.0, 1.0, 0.0, "abs", ok); }

void Report::merge(const Report& sub, const std::string& prefix) {
  for (Check c : sub.checks) {
    c.name = prefix + "/" + c.name;
    checks.push_back(std::move(c));
  }
  for (const auto& [k, v] : sub.truncation) truncation.emplace_back(prefix + "/" + k, v);
  for (const auto& n : sub.notes) notes.push_back(prefix + ": " + n);
  for (CsvTable t : sub.tables) {
    t.file = prefix + "_" + t.file;
    tables.push_back(std::move(t));
  }
}

bool Report::pass() const { return failures() == 0; }

size_t Report::failures() const {
  size_t n = 0;
  for (const auto& c : checks) n += !c.pass;
  return n;
}

nlohmann::json Report::to_json() const {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["experiment"] = experiment;
  j["config"] = config;
  j["pass"] = pass();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name},
                           {"value", c.value},
                           {"expected", c.expected},
                           {"tolerance", c.tolerance},
                           {"relation", c.relation},
                           {"pass", c.pass}});
  j["truncation"] = nlohmann::json::array();
  for (const auto& [k, v] : truncation) j["truncation"].push_back({{"name", k}, {"delta", v}});
  j["notes"] = notes;
  j["csv"] = nlohmann::json::array();
  for (const auto& t : tables)
    j["csv"].push_back({{"file", t.file}, {"description", t.description}, {"columns", t.columns}});
  return j;
}

std::string Report::dump() const { return to_json().dump(2) + "\n"; }

Report report_from_json(const nlohmann::json& j) {
  if (!j.contains("schema_version") || j.at("schema_version") != kSchemaVersion)
    fail(ErrorCode::ConfigInvalid, "unsupported report schema");
  Report r;
  r.experiment = j.at("experiment").get<std::string>();
  r.config = j.at("config");
  for (const auto& c : j.at("checks")) {
    // non-finite numbers are serialized as null
    auto num = [](const nlohmann::json& v) { return v.is_null() ? std::nan("") : v.get<double>(); };
    r.checks.push_back({c.at("name").get<std::string>(), num(c.at("value")), num(c.at("expected")),
                        num(c.at("tolerance")), c.at("relation").get<std::string>(), c.at("pass").get<bool>()});
  }
  for (const auto& t : j.at("truncation")) r.truncation.emplace_back(t.at("name").get<std::string>(), t.at("delta").get<double>());
  r.notes = j.at("notes").get<std::vector<std::string>>();
  for (const auto& t : j.at("csv"))
    r.tables.push_back({t.at("file").get<std::string>(), t.at("description").get<std::string>(),
                        t.at("columns").get<std::vector<std::string>>(), {}});
  return r;
}

std::string csv_text(const CsvTable& t) {
  std::string out;
  for (size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += '\n';
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_double(row[i]);
    out += '\n';
  }
  return out;
}

void write_outputs(const Report& r, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::ConfigInvalid, "cannot create output directory " + dir + ": " + ec.message());
  auto write = [&](const std::string& name, const std::string& body) {
    std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
    if (!out) fail(ErrorCode::ConfigInvalid, "cannot write " + name + " in " + dir);
    out << body;
  };
  write("report.json", r.dump());
  for (const auto& t : r.tables) write(t.file, csv_text(t));
}

}  // namespace smlab::lab
