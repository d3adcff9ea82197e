#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace kms {

using Complex = std::complex<double>;

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments outside an operation's domain (n < 2, complex rho where a real
/// one is required, and so on).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// rho = +-1, where K_n(rho) is singular.
class SingularParameter : public Error {
 public:
  using Error::Error;
};

/// A rational expression was evaluated at (or numerically at) a pole.
class PoleError : public Error {
 public:
  using Error::Error;
};

/// A requested quantity does not fit in double precision.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// A bracketing interval did not enclose a sign change. Indicates a bug.
class BracketFailure : public Error {
 public:
  using Error::Error;
};

/// Two independent formulas for the same quantity disagree.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A polynomial zero could not be attributed to exactly one factor.
class AmbiguityError : public Error {
 public:
  using Error::Error;
};

/// An iterative method did not converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Input larger than an operation's declared size cap.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// A computed object failed its a-posteriori verification.
class VerificationFailure : public Error {
 public:
  using Error::Error;
};

/// An approximation was requested outside the regime it is defined for.
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace kms
