#pragma once

#include <stdexcept>
#include <string>

namespace raman {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad user input. `key()` names the offending field when one is known.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& msg, std::string key = {})
      : Error(key.empty() ? msg : key + ": " + msg), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

private:
  std::string key_;
};

class SpecError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

class IncompleteInputError : public Error {
public:
  using Error::Error;
};

class ResourceError : public Error {
public:
  using Error::Error;
};

class NumericalError : public Error {
public:
  using Error::Error;
};

// Cutoff too small for the requested state or moment, or monitor breach.
class TruncationError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

}  // namespace raman
