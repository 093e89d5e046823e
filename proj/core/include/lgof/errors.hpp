#pragma once

#include <stdexcept>
#include <string>

namespace lgof {

// Base of every error raised by the library. The CLI maps the subclasses to
// exit codes (input/usage 2, degenerate data 3, numeric failure 4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of a function (non-finite input, u outside
// (0,1), invalid distribution parameters, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Sample too small for the requested operation.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Sample with zero spread; location/scale cannot be estimated.
class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

// Floating-point evaluation that would overflow even after rearrangement.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature did not reach its tolerance.
class QuadratureError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Iterative solver ran out of iterations. Carries the last iterate.
class ConvergenceError : public NumericError {
 public:
  ConvergenceError(const std::string& what, double last_mu, double last_sigma, int iterations)
      : NumericError(what), last_mu_(last_mu), last_sigma_(last_sigma), iterations_(iterations) {}

  double last_mu() const noexcept { return last_mu_; }
  double last_sigma() const noexcept { return last_sigma_; }
  int iterations() const noexcept { return iterations_; }

 private:
  double last_mu_;
  double last_sigma_;
  int iterations_;
};

}  // namespace lgof
