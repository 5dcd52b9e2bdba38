#pragma once

#include <stdexcept>
#include <string>

namespace sld {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Potential violates q0 >= -1/4 or is otherwise unusable.
class InvalidPotential : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation (lambda <= 0, x <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

/// Zero denominator in the Frobenius recurrence.
class ResonanceError : public Error {
 public:
  using Error::Error;
};

/// Truncated Frobenius series did not reach machine precision; shrink x.
class SeriesNotConverged : public Error {
 public:
  using Error::Error;
};

/// Adaptive step size underflowed.
class StiffnessError : public Error {
 public:
  using Error::Error;
};

/// lambda <= q(x) where an approximant needs lambda - q(x) > 0.
class TurningPointError : public Error {
 public:
  using Error::Error;
};

/// The quadratic form in the density denominator is not positive; the
/// matching point is too small for the chosen approximant.
class MatchingPointTooSmall : public Error {
 public:
  using Error::Error;
};

/// Matching-point refinement exhausted its doubling budget.
class RefinementFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input (potential spec, CLI flag, config file).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace sld
