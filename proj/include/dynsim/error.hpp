#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dynsim {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed or truncated input data (STL, clip, log container, ...).
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, size_t byte_offset)
      : Error(msg), byte_offset(byte_offset) {}
  size_t byte_offset;
};

/// Caller violated a precondition (empty mesh, index gap, NaN input, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace dynsim
