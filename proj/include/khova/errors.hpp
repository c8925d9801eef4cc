#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace khova {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text input that does not follow the grammar. `position` is a 0-based byte
// offset into the offending string.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// An operation was called outside its domain: mismatched dimensions, an order
// that is not a well-order for a non-homogeneous ideal, a matrix outside the
// Groebner region, and so on.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace khova
