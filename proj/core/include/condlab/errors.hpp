#pragma once

#include <stdexcept>
#include <string>

namespace condlab {

// Argument outside the mathematical domain of an operation (theta > pi/2,
// rho < 0, zero vector, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A theorem hypothesis is not met (e.g. N >= 5 for the smoothed Gaussian
// bound). Distinct from DomainError so callers can report it as a
// configuration problem rather than a numeric one.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Quadrature did not reach its tolerance, or a tabulated density failed its
// mass check.
class QuadratureFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Probability-zero event hit in floating point (a point on the hyperplane
// orthogonal to the Gaussian center). Monte Carlo callers count these as
// censored samples.
class MeasureZeroEvent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace condlab
