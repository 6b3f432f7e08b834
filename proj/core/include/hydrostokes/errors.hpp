#pragma once

#include <stdexcept>
#include <string>

namespace hydrostokes {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition (shape, range, reality).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A resolvent was requested at (or too close to) a point of the spectrum.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Time stepping exceeded the blow-up guard.
class BlowUpError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration text or an out-of-range setting.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Malformed or incompatible snapshot file.
class FormatError : public Error {
 public:
  using Error::Error;
};

inline void require(bool condition, const std::string& what) {
  if (!condition) throw ContractViolation(what);
}

}  // namespace hydrostokes
