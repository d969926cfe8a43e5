#pragma once

#include <stdexcept>
#include <string>

namespace sphreg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter violates an operation's precondition (bad dimension,
/// alpha <= d/2, mismatched sizes, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Pointwise harmonic evaluation is only implemented on S^2.
class UnsupportedDimension : public InvalidArgument {
 public:
  explicit UnsupportedDimension(int d)
      : InvalidArgument("pointwise basis unavailable for this dimension (d=" +
                        std::to_string(d) + ", only d=2 is supported)"),
        dimension_(d) {}
  [[nodiscard]] int dimension() const noexcept { return dimension_; }

 private:
  int dimension_;
};

/// Polynomial-decay bounds cannot be checked because some C_l is zero.
class ConditionUnverifiable : public Error {
 public:
  using Error::Error;
};

/// Dense linear solve failed; carries a reciprocal condition estimate.
class SingularSystem : public Error {
 public:
  SingularSystem(const std::string& what, double rcond)
      : Error(what + " (rcond estimate " + std::to_string(rcond) + ")"),
        rcond_(rcond) {}
  [[nodiscard]] double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

/// Malformed input file or I/O failure. `line` is 0 when not applicable.
class DataError : public Error {
 public:
  DataError(const std::string& what, std::size_t line = 0)
      : Error(line ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sphreg
