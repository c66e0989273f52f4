#pragma once

#include <stdexcept>
#include <string>

namespace freecairn {

// Malformed word or interval literal. `position` is the 0-based offset of the
// offending character in the input.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A configured cap (ball radius, interval rank, ambient dimension, atom
// count) would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Something the mathematics guarantees did not happen. Always a bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class OutOfWindowError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : std::runtime_error(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

class DecompositionError : public std::runtime_error {
 public:
  DecompositionError(const std::string& what, std::string worst, double residual)
      : std::runtime_error(what), worst_(std::move(worst)), residual_(residual) {}
  const std::string& worst_offender() const noexcept { return worst_; }
  double residual() const noexcept { return residual_; }

 private:
  std::string worst_;
  double residual_;
};

}  // namespace freecairn
