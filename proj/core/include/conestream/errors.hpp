#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conestream {

/// Malformed or semantically invalid input (tower, filtration or barcode).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parse failure tied to a specific input line (1-based).
class FormatError : public InputError {
 public:
  FormatError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A runtime-checked theoretical bound was exceeded.
class BoundViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace conestream
