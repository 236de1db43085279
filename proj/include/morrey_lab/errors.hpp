#pragma once

#include <stdexcept>
#include <string>

namespace morrey {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Point or descriptor dimensions do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// The operation is not defined for the supplied group.
class UnsupportedGroupError : public Error {
 public:
  using Error::Error;
};

/// An integrand produced a non-finite sample.
class IntegrandError : public Error {
 public:
  using Error::Error;
};

/// Both sides of an inequality vanish or only the right side does.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Quadrature could not reach the requested accuracy within its budget.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// A configuration document is malformed; the message names the field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace morrey
