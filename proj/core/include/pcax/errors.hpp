#pragma once

#include <stdexcept>
#include <string>

namespace pcax {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Structural misuse of an API: dimension mismatches, out-of-range
/// component counts, invalid parameters.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// The input data violates a contract: unreadable or malformed files,
/// constant variables where variation is required, empty results after
/// cleaning.
class DataError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed: no convergence within the iteration cap,
/// singular matrix, asymmetry beyond tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace pcax
