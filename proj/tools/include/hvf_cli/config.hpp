#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace hvf::cli {

/// Malformed configuration or an unknown scenario (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be read or written (exit code 3).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` settings; every field overrides the scenario default.
struct Config {
  std::string scenario;
  std::optional<int> level;
  std::optional<int> samples;
  std::optional<int> steps;
  std::optional<double> tol;
  std::optional<double> step_size;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> alpha;  // polynomial in V1..Vn
  std::optional<std::string> sigma;
  std::optional<std::string> field;
};

/// Lines are `key = value`; `#` starts a comment; strings may be quoted.
/// Unknown keys, duplicate keys and unparsable values raise ConfigError.
Config parse_config(const std::string& text);
Config load_config(const std::string& path);

/// Fields set in `over` replace those in `base`.
Config merge(Config base, const Config& over);

}  // namespace hvf::cli
