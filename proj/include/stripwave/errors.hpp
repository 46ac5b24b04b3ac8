#pragma once

#include <stdexcept>
#include <string>

namespace stripwave {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument values (s = 0, n <= 0, x outside the piece, mismatched grids).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class SingularSystemError : public Error {
 public:
  using Error::Error;
};

// Iterative method gave up; carries whatever estimate it had.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_estimate, int iterations)
      : Error(what), last_estimate_(last_estimate), iterations_(iterations) {}
  double last_estimate() const noexcept { return last_estimate_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double last_estimate_;
  int iterations_;
};

// Argument-principle count that never settles on an integer.
class WindingError : public Error {
 public:
  using Error::Error;
};

// A checked invariant failed after the fact (energy went up, spurious root...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace stripwave
