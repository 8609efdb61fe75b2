#pragma once

#include <stdexcept>
#include <string>

namespace e8jac {

// A configured enumeration or memory budget would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Requested data lies beyond the truncation that was computed.
class TruncationError : public std::runtime_error {
 public:
  TruncationError(const std::string& what, int required)
      : std::runtime_error(what), required_(required) {}
  int required() const { return required_; }

 private:
  int required_;
};

// An internal mathematical invariant failed; signals a construction bug.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Text input could not be parsed; position is a 0-based character offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace e8jac
