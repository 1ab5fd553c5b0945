#pragma once

// Flat key-value experiment configuration. File lines are "key = value" or
// "key value"; '#' starts a comment. Command-line --key value pairs override
// file entries.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace smlab::lab {

enum class KeyType { Int, PositiveReal, NonzeroReal, U64, Text };

struct KeySpec {
  std::string name;
  KeyType type;
  int min_int = 0;  // Int keys only
  int max_int = 0;
  std::string help;
};

const std::vector<KeySpec>& known_keys();

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 1;
  std::string out_dir = "smlab_out";
  /// Explicitly set numeric keys, stored as given after validation.
  std::map<std::string, std::string> params;

  /// Validates the key and value; throws ConfigInvalid.
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return params.count(key) != 0; }
  int get_int(const std::string& key, int fallback) const;
  double get_double(const std::string& key, double fallback) const;

  /// {"experiment", "seed", "params"}; the output directory is not echoed so
  /// reports do not depend on where they are written.
  nlohmann::json echo() const;
};

/// Applies every entry of a config file body on top of `cfg`.
void apply_config_text(ExperimentConfig& cfg, const std::string& text);
void apply_config_file(ExperimentConfig& cfg, const std::string& path);

}  // namespace smlab::lab
