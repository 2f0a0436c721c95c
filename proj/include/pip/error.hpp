#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pip {

// Caller passed something outside an operation's domain (bad sizes, bad
// intervals, indices out of range).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exact integer arithmetic overflowed.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Problem exceeds a configured size guard.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Singular systems, coinciding nodes, non-finite samples.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& message)
      : std::runtime_error("at offset " + std::to_string(offset) + ": " + message),
        offset_(offset),
        message_(message) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t offset_;
  std::string message_;
};

}  // namespace pip
