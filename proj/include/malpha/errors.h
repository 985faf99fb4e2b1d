#pragma once

#include <stdexcept>
#include <string>

namespace malpha {

// Invalid configuration or input data (exit code 2 at the CLI).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// CFL bound exceeded at runtime; a configuration problem, not a blowup.
class CflViolation : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// A documented precondition of an operation was not met.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Non-finite values or runaway growth during time integration.
class NumericalBlowup : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Binary file errors. Each failure mode has its own type.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatError : public IoError {
 public:
  using IoError::IoError;
};

class VersionMismatch : public IoError {
 public:
  using IoError::IoError;
};

class TruncatedFile : public IoError {
 public:
  using IoError::IoError;
};

}  // namespace malpha
