#include "sphreg/config.hpp"

#include <sstream>

#include "sphreg/error.hpp"
#include "sphreg/io.hpp"

namespace sphreg {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ", " : "") + items[i];
  return out;
}

long long parse_integer(const std::string& v) {
  std::size_t pos = 0;
  const long long x = std::stoll(v, &pos);
  if (pos != v.size()) throw std::invalid_argument(v);
  return x;
}

unsigned long long parse_unsigned(const std::string& v) {
  if (!v.empty() && v.front() == '-') throw std::invalid_argument(v);
  std::size_t pos = 0;
  const unsigned long long x = std::stoull(v, &pos);
  if (pos != v.size()) throw std::invalid_argument(v);
  return x;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument(v);
}

std::vector<std::size_t> parse_size_list(const std::string& v) {
  std::vector<std::size_t> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(static_cast<std::size_t>(parse_unsigned(trim(item))));
  if (out.empty()) throw std::invalid_argument(v);
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> keys, const std::string& detail)
    : InvalidArgument("config error in key(s) [" + join(keys) + "]: " + detail), keys_(std::move(keys)) {}

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError({line}, "line " + std::to_string(number) + " is not of the form key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError({"<empty>"}, "line " + std::to_string(number) + " has an empty key");
    if (!kv.emplace(key, value).second) throw ConfigError({key}, "duplicate key on line " + std::to_string(number));
  }
  return kv;
}

const std::set<std::string>& experiment_keys() {
  static const std::set<std::string> keys{"d",           "alpha", "beta",         "kappa",  "sigma",
                                          "c",           "truth_degree", "sample_sizes", "repetitions",
                                          "seed",        "pathway", "grid_degree", "normalize_truth", "threads"};
  return keys;
}

void apply_config(const KeyValues& kv, ExperimentConfig& cfg, const std::set<std::string>& extra_keys) {
  std::vector<std::string> unknown;
  std::vector<std::string> invalid;
  for (const auto& [key, value] : kv) {
    if (!experiment_keys().contains(key)) {
      if (!extra_keys.contains(key)) unknown.push_back(key);
      continue;
    }
    try {
      if (key == "d") cfg.d = static_cast<int>(parse_integer(value));
      else if (key == "alpha") cfg.alpha = parse_double(value);
      else if (key == "beta") cfg.beta = parse_double(value);
      else if (key == "kappa") cfg.kappa = parse_double(value);
      else if (key == "sigma") cfg.sigma = parse_double(value);
      else if (key == "c") cfg.c = parse_double(value);
      else if (key == "truth_degree") cfg.truth_degree = static_cast<int>(parse_integer(value));
      else if (key == "sample_sizes") cfg.sample_sizes = parse_size_list(value);
      else if (key == "repetitions") cfg.repetitions = static_cast<std::size_t>(parse_unsigned(value));
      else if (key == "seed") cfg.seed = parse_unsigned(value);
      else if (key == "pathway") cfg.pathway = parse_pathway(value);
      else if (key == "grid_degree") cfg.grid_degree = static_cast<int>(parse_integer(value));
      else if (key == "normalize_truth") cfg.normalize_truth = parse_bool(value);
      else if (key == "threads") cfg.threads = static_cast<unsigned>(parse_unsigned(value));
    } catch (const std::exception&) {
      invalid.push_back(key);
    }
  }
  if (!unknown.empty() || !invalid.empty()) {
    std::vector<std::string> keys = unknown;
    keys.insert(keys.end(), invalid.begin(), invalid.end());
    std::string detail;
    if (!unknown.empty()) detail += "unknown key(s): " + join(unknown);
    if (!invalid.empty()) detail += std::string(detail.empty() ? "" : "; ") + "unparsable value(s): " + join(invalid);
    throw ConfigError(std::move(keys), detail);
  }
}

std::string format_config(const ExperimentConfig& cfg) {
  std::string sizes;
  for (std::size_t i = 0; i < cfg.sample_sizes.size(); ++i) sizes += (i ? "," : "") + std::to_string(cfg.sample_sizes[i]);
  std::ostringstream out;
  out << "d = " << cfg.d << '\n'
      << "alpha = " << format_double(cfg.alpha) << '\n'
      << "beta = " << format_double(cfg.beta) << '\n'
      << "kappa = " << format_double(cfg.kappa) << '\n'
      << "sigma = " << format_double(cfg.sigma) << '\n'
      << "c = " << format_double(cfg.c) << '\n'
      << "truth_degree = " << cfg.truth_degree << '\n'
      << "sample_sizes = " << sizes << '\n'
      << "repetitions = " << cfg.repetitions << '\n'
      << "seed = " << cfg.seed << '\n'
      << "pathway = " << to_string(cfg.pathway) << '\n'
      << "grid_degree = " << cfg.grid_degree << '\n'
      << "normalize_truth = " << (cfg.normalize_truth ? "true" : "false") << '\n'
      << "threads = " << cfg.threads << '\n';
  return out.str();
}

}  // namespace sphreg
