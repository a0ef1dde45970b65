#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diffax {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression or instance text. `position` is a 0-based byte offset
/// into the input (or a line number for instance files, see message).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A variable, derivation or symbol index outside the configured ring.
class IndexError : public Error {
 public:
  using Error::Error;
};

/// An operation applied outside its domain (division by zero, y-variables
/// where only x-variables are allowed, unassigned model variables, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace diffax
