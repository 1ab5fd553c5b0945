#include "smlab/lab/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "smlab/error.hpp"

namespace smlab::lab {

const std::vector<KeySpec>& known_keys() {
  static const std::vector<KeySpec> keys = {
      {"seed", KeyType::U64, 0, 0, "corpus seed (MT19937-64)"},
      {"out", KeyType::Text, 0, 0, "output directory"},
      {"N", KeyType::Int, 2, 64, "window half-width"},
      {"rmax", KeyType::Int, 1, 16, "largest range of D_K / D_B"},
      {"depth", KeyType::Int, 1, 3, "Cantor depth"},
      {"cutoff", KeyType::Int, 1, 12, "torus mode cutoff"},
      {"lambda", KeyType::NonzeroReal, 0, 0, "coefficient of X in D_lambda / D_B"},
      {"samples", KeyType::Int, 1, 1000, "random corpus size"},
      {"kmax", KeyType::Int, 2, 64, "largest orbit step in growth experiments"},
      {"tol", KeyType::PositiveReal, 0, 0, "tolerance for identities"},
      {"lp_tol", KeyType::PositiveReal, 0, 0, "tolerance for LP optima"},
  };
  return keys;
}

namespace {

const KeySpec& spec_of(const std::string& key) {
  for (const auto& k : known_keys())
    if (k.name == key) return k;
  fail(ErrorCode::ConfigInvalid, "unknown key '" + key + "'");
}

long long parse_int(const std::string& key, const std::string& v) {
  long long out = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) fail(ErrorCode::ConfigInvalid, key + ": not an integer: '" + v + "'");
  return out;
}

double parse_real(const std::string& key, const std::string& v) {
  size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    fail(ErrorCode::ConfigInvalid, key + ": not a number: '" + v + "'");
  }
  if (used != v.size() || !std::isfinite(out)) fail(ErrorCode::ConfigInvalid, key + ": not a finite number: '" + v + "'");
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  const KeySpec& spec = spec_of(key);
  switch (spec.type) {
    case KeyType::U64: {
      std::uint64_t s = 0;
      const auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
      if (ec != std::errc() || p != value.data() + value.size())
        fail(ErrorCode::ConfigInvalid, "seed must be an unsigned 64-bit integer: '" + value + "'");
      seed = s;
      return;
    }
    case KeyType::Text:
      if (value.empty()) fail(ErrorCode::ConfigInvalid, key + " must not be empty");
      out_dir = value;
      return;
    case KeyType::Int: {
      const long long v = parse_int(key, value);
      if (v < spec.min_int || v > spec.max_int)
        fail(ErrorCode::ConfigInvalid, key + " must lie in [" + std::to_string(spec.min_int) + ", " +
                                           std::to_string(spec.max_int) + "], got " + value);
      break;
    }
    case KeyType::PositiveReal:
      if (!(parse_real(key, value) > 0.0)) fail(ErrorCode::ConfigInvalid, key + " must be > 0");
      break;
    case KeyType::NonzeroReal:
      if (parse_real(key, value) == 0.0) fail(ErrorCode::ConfigInvalid, key + " must be nonzero");
      break;
  }
  params[key] = value;
}

int ExperimentConfig::get_int(const std::string& key, int fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : static_cast<int>(parse_int(key, it->second));
}

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : parse_real(key, it->second);
}

nlohmann::json ExperimentConfig::echo() const {
  nlohmann::json j;
  j["experiment"] = experiment;
  j["seed"] = seed;
  j["params"] = nlohmann::json::object();
  for (const auto& [k, v] : params) j["params"][k] = v;
  return j;
}

void apply_config_text(ExperimentConfig& cfg, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::string key, value;
    const auto eq = line.find('=');
    if (eq != std::string::npos) {
      key = trim(line.substr(0, eq));
      value = trim(line.substr(eq + 1));
    } else {
      const auto sp = line.find_first_of(" \t");
      if (sp == std::string::npos) fail(ErrorCode::ConfigInvalid, "line " + std::to_string(lineno) + ": missing value");
      key = line.substr(0, sp);
      value = trim(line.substr(sp));
    }
    cfg.set(key, value);
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigInvalid, "cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  apply_config_text(cfg, ss.str());
}

}  // namespace smlab::lab
