#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mfrac {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside the mathematical domain of an operation
/// (Hurst exponent outside (0,1), translate out of range, non-positive bandwidth, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input data cannot support the requested computation: too few samples,
/// mismatched grids, malformed files.
class DataError : public Error {
 public:
  using Error::Error;
};

/// The request would exceed a practical resource bound.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a text input, positioned at a byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset);

  std::size_t offset() const noexcept { return offset_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t offset_;
  std::string detail_;
};

}  // namespace mfrac
