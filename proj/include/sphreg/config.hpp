#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sphreg/error.hpp"
#include "sphreg/experiments.hpp"

namespace sphreg {

/// Flat `key = value` document. `#` starts a comment; blank lines are ignored.
using KeyValues = std::map<std::string, std::string>;

/// Throws ConfigError on malformed lines or duplicate keys.
[[nodiscard]] KeyValues parse_key_values(const std::string& text);

/// Schema violation; lists every offending key.
class ConfigError : public InvalidArgument {
 public:
  explicit ConfigError(std::vector<std::string> keys, const std::string& detail);
  [[nodiscard]] const std::vector<std::string>& keys() const noexcept { return keys_; }

 private:
  std::vector<std::string> keys_;
};

/// Keys understood by apply_config, mirroring ExperimentConfig fields.
[[nodiscard]] const std::set<std::string>& experiment_keys();

/// Overwrites fields of `cfg` from `kv`. Keys outside experiment_keys() and
/// `extra_keys` are rejected, as are values that fail to parse.
void apply_config(const KeyValues& kv, ExperimentConfig& cfg, const std::set<std::string>& extra_keys = {});

/// `key = value` lines for every experiment field, in schema order.
[[nodiscard]] std::string format_config(const ExperimentConfig& cfg);

}  // namespace sphreg
