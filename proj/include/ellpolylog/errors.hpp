#pragma once

#include <stdexcept>
#include <string>

namespace ellpolylog {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition on an argument was violated.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation requested too close to a pole (lattice point, torsion point).
class PoleProximityError : public Error {
 public:
  using Error::Error;
};

// A series did not reach working precision within its term budget, or a
// summation mode cannot give meaning to the requested sum.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Cauchy coefficient extraction detected a singularity inside the contour
// or an under-resolved trapezoid rule.
class AliasingError : public Error {
 public:
  using Error::Error;
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

// Malformed command line, config file or tolerance override.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace ellpolylog
