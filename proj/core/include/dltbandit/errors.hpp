#pragma once

#include <stdexcept>
#include <string>

namespace dltbandit {

// Base for every error raised by the library. The CLI maps subclasses to
// process exit codes (see tools/dltsim.cpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration, schema violation, bad snapshot contents.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A numerical solver failed to converge.
class SolverError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration requested above the configured arm cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Load fractions outside the probability simplex.
class InvalidAllocation : public Error {
 public:
  using Error::Error;
};

// An interval [t_m, t_n] with t_n <= t_m.
class DegenerateInterval : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Posterior snapshot written by an incompatible format version.
class VersionMismatch : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

}  // namespace dltbandit
