#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

//! Base of every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

//! An argument lies outside the domain of the operation.
class DomainError : public Error
{
  public:
    using Error::Error;
};

//! Imperfection parameters do not describe a spherical cap.
class DegenerateGeometryError : public DomainError
{
  public:
    using DomainError::DomainError;
};

//! Metrology input that cannot be evaluated (zero variance of the mean).
class DegenerateBudgetError : public DomainError
{
  public:
    using DomainError::DomainError;
};

//! Required coefficient missing from a user-supplied table.
class ConfigurationError : public Error
{
  public:
    using Error::Error;
};

//! Base for failures of a numerical procedure on valid input.
class NumericalError : public Error
{
  public:
    using Error::Error;
};

//! The closed thermal series would need too many terms at this tau.
class SlowConvergenceError : public NumericalError
{
  public:
    using NumericalError::NumericalError;
};

//! Adaptive quadrature did not reach the requested tolerance.
class QuadratureError : public NumericalError
{
  public:
    QuadratureError(std::string const& what, double estimate, double error)
        : NumericalError(what), estimate_(estimate), error_(error)
    {
    }

    double estimate() const noexcept { return estimate_; }
    double achieved_error() const noexcept { return error_; }

  private:
    double estimate_;
    double error_;
};

}  // namespace casimir
