#pragma once

#include <stdexcept>
#include <string>

namespace selftaught {

class InvalidSpec : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class InvalidGenome : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Bad configuration value or inconsistent combination of values.
/// key() names the offending key when one is known.
class ConfigError : public std::runtime_error {
public:
  ConfigError(std::string key, const std::string& reason)
      : std::runtime_error(key.empty() ? reason : key + ": " + reason), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

private:
  std::string key_;
};

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class StatsError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace selftaught
