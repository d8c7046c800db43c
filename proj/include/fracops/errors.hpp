#pragma once

#include <stdexcept>
#include <string>

namespace fracops {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested at a singular point (kernel at 0, fundamental solution at 0).
class SingularityError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A model parameter is outside the supported range of an algorithm.
class ParameterError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The requested operation is not available for this kernel or field.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed to reach its accuracy target.
class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double achieved)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// An iterative solver hit its iteration cap.
class NonConvergenceError : public NumericalError {
 public:
  NonConvergenceError(const std::string& what, double residual, int iterations)
      : NumericalError(what, residual), iterations_(iterations) {}
  double residual() const noexcept { return achieved(); }
  int iterations() const noexcept { return iterations_; }

 private:
  int iterations_;
};

}  // namespace fracops
