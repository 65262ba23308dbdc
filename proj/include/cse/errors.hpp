#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cse {

/// Base of every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or configuration; `field()` names the offending input.
class ConfigError : public Error
{
  public:
    ConfigError(std::string field, std::string const& what)
        : Error(field + ": " + what), field_(std::move(field))
    {
    }
    std::string const& field() const noexcept { return field_; }

  private:
    std::string field_;
};

/// A linear solve inside a time step failed (zero pivot or non-finite result).
class SolverError : public Error
{
  public:
    SolverError(std::size_t step, std::string const& what)
        : Error("step " + std::to_string(step) + ": " + what), step_(step)
    {
    }
    std::size_t step() const noexcept { return step_; }

  private:
    std::size_t step_;
};

/// No principal-branch solution of a discrete dispersion relation.
class DispersionError : public Error
{
  public:
    using Error::Error;
};

/// Stability polynomial with a vanishing leading coefficient.
class DegeneratePolynomialError : public Error
{
  public:
    using Error::Error;
};

/// The reference integrator could not reach the requested accuracy.
class ReferenceError : public Error
{
  public:
    using Error::Error;
};

}  // namespace cse
