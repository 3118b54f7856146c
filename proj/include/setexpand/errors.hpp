#pragma once

#include <stdexcept>
#include <string>

namespace setexpand {

// Base for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration values or unparseable config files / flags.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed input file contents (encoding, arity, syntax).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Semantic violations: broken preconditions, cross-reference failures.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A remote model server misbehaved. status == 0 means transport failure.
class BackendError : public Error {
 public:
  BackendError(std::string endpoint, int status, const std::string& detail)
      : Error("backend " + endpoint + ": " + detail +
              (status != 0 ? " (status " + std::to_string(status) + ")" : "")),
        endpoint_(std::move(endpoint)),
        status_(status) {}

  const std::string& endpoint() const { return endpoint_; }
  int status() const { return status_; }

 private:
  std::string endpoint_;
  int status_;
};

// A remote backend changed its answer shape mid-run (e.g. vector dimension).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace setexpand
