#pragma once

#include <stdexcept>
#include <string>

namespace pil {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A DomainSpec or QuadConfig violates its invariants.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// The integrand returned a non-finite value at a quadrature node.
class DomainEvaluationError : public Error {
 public:
  DomainEvaluationError(double abscissa, double value);

  double abscissa() const noexcept { return abscissa_; }
  double value() const noexcept { return value_; }

 private:
  double abscissa_;
  double value_;
};

/// An endpoint singularity grows like 1/distance or faster.
class NonIntegrableSingularityError : public Error {
 public:
  NonIntegrableSingularityError(double endpoint, double exponent);

  double endpoint() const noexcept { return endpoint_; }
  double exponent() const noexcept { return exponent_; }

 private:
  double endpoint_;
  double exponent_;
};

/// A parameter value lies outside the integral's validity window.
class ParameterDomainError : public Error {
 public:
  using Error::Error;
};

/// Finite differencing was requested at a boundary of the parameter domain.
class OneSidedDifferenceUnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A domination scan window is empty or touches a singular parameter value.
class DegenerateWindowError : public Error {
 public:
  using Error::Error;
};

/// Catalog lookup with an id that is not registered.
class UnknownEntryError : public Error {
 public:
  using Error::Error;
};

}  // namespace pil
