#pragma once

#include <stdexcept>
#include <string>

namespace stp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the arguments was violated (dimension mismatch, bad range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Rational and fixed-point values were combined in one computation.
class BackendMismatch : public Error {
 public:
  using Error::Error;
};

/// The fixed-point representation cannot carry the requested output precision.
class PrecisionExhausted : public Error {
 public:
  using Error::Error;
};

/// An iteration or scan budget ran out before the answer was certified.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A numerical answer could not be separated from the declared resolution.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// A truncated construction cannot meet its declared tolerance.
class ToleranceExceeded : public Error {
 public:
  ToleranceExceeded(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// Invalid experiment configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace stp
