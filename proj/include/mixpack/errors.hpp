#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mixpack {

/// Bad user input: unknown vertex, duplicate id, malformed certificate file.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// An exhaustive code path would exceed one of the configured enumeration bounds.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& bound, std::size_t value, std::size_t limit)
      : std::runtime_error(bound + " is " + std::to_string(value) + ", above the configured bound " +
                           std::to_string(limit)),
        bound_(bound) {}

  const std::string& bound() const { return bound_; }

 private:
  std::string bound_;
};

/// A structural guarantee of the algorithm failed to hold. Always a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mixpack
