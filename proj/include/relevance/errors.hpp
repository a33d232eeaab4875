#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relevance {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A state, coordinate, or action index lies outside the problem's dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Malformed input: bad circuit topology, bad transition row, invalid schema.
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& what, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A configured expansion/oracle/lattice budget would be exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Input has the wrong structure for the requested construction (e.g. a QBF
// prefix that is not one existential block followed by one universal block).
class ShapeError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Threshold decider invoked with rho >= n + 1.
class OutOfGapError : public Error {
 public:
  using Error::Error;
};

}  // namespace relevance
