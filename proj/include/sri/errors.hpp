#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sri {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed expression text; `offset` is the byte position in the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& message)
      : Error("parse error at byte " + std::to_string(offset) + ": " + message),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_ = 0;
};

// Evaluation left the domain of a math operation (log, sqrt, pow, division).
// Carries the byte offset of the offending expression node when known.
class DomainError : public Error {
 public:
  DomainError(std::size_t offset, const std::string& message)
      : Error("domain error at byte " + std::to_string(offset) + ": " + message),
        offset_(offset),
        raw_(message) {}

  explicit DomainError(const std::string& message)
      : Error("domain error: " + message), raw_(message) {}

  std::size_t offset() const { return offset_; }
  const std::string& raw() const { return raw_; }

 private:
  std::size_t offset_ = 0;
  std::string raw_;
};

// Inputs with inconsistent shapes (vector lengths, matrix dimensions).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// File or CSV problems; messages cite 1-based (line, column) positions.
class IoError : public Error {
 public:
  using Error::Error;
};

// Feature count too large for exhaustive coalition enumeration.
class LimitError : public Error {
 public:
  using Error::Error;
};

// A computed quantity violated a numerical postcondition.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace sri
