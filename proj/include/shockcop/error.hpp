#pragma once

#include <stdexcept>
#include <string>

namespace shockcop {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected parameters: non-positive rates, negative masses, bad ranges.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// A p-box whose lower bound exceeds its upper bound somewhere.
class OrderViolation : public Error {
 public:
  OrderViolation(const std::string& what, double witness)
      : Error(what), witness_(witness) {}
  double witness() const noexcept { return witness_; }

 private:
  double witness_;
};

/// The pointwise result of two analytic pieces leaves the representable
/// family (e.g. exponential times exponential). Discretize first.
class UnsupportedSegmentPair : public Error {
 public:
  using Error::Error;
};

/// A generator was requested from a distribution function with F(+inf) < 1.
class NonProperInput : public Error {
 public:
  using Error::Error;
};

/// Envelope copulas of a family failed the copula axioms.
class NotAWitness : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario file or command-line configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace shockcop
