#pragma once

#include <stdexcept>
#include <string>

namespace annulus_lab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a function (tan/cot poles, bad radicands, pole of V_p).
class DomainError : public Error {
  public:
    using Error::Error;
};

/// A point that does not lie on the space form.
class InvalidPointError : public Error {
  public:
    using Error::Error;
};

/// Family parameter outside its admissible range.
class ParameterRangeError : public Error {
  public:
    using Error::Error;
};

/// Quadrature/ODE/eigensolver failures, bad brackets, accuracy checks.
class NumericError : public Error {
  public:
    using Error::Error;
};

class SingularMatrixError : public NumericError {
  public:
    using NumericError::NumericError;
};

/// Degenerate frames and containment violations.
class GeometryError : public Error {
  public:
    using Error::Error;
};

class NoFreeBoundaryError : public Error {
  public:
    using Error::Error;
};

class UnachievableRadiusError : public Error {
  public:
    using Error::Error;
};

/// The frequency coincides (numerically) with a Dirichlet eigenvalue.
class DirichletResonanceError : public NumericError {
  public:
    using NumericError::NumericError;
};

class ConfigurationError : public Error {
  public:
    using Error::Error;
};

class DegenerateFieldError : public Error {
  public:
    using Error::Error;
};

class UndefinedQuotientError : public Error {
  public:
    using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace annulus_lab
