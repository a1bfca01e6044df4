#pragma once

#include <stdexcept>
#include <string>

namespace gravwell {

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error
{
  public:
    using Error::Error;
};

/// Result not representable as a double (use the log-space variants).
class OverflowError : public Error
{
  public:
    using Error::Error;
};

/// Invalid user-facing parameter; the message names the key and its accepted range.
class ValidationError : public Error
{
  public:
    using Error::Error;
};

/// An iterative numerical procedure did not converge.
class ConvergenceError : public Error
{
  public:
    using Error::Error;
};

/// Root bracketing produced a ladder inconsistent with the semiclassical count.
class BracketingError : public ConvergenceError
{
  public:
    using ConvergenceError::ConvergenceError;
};

} // namespace gravwell
