#pragma once

#include <stdexcept>
#include <string>

namespace suds {

// Every validation failure in the toolkit surfaces as one of these.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw Error(message);
}

inline void require_dim(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(expected) +
                         ", got " + std::to_string(actual));
  }
}

}  // namespace detail
}  // namespace suds
