#pragma once

#include <stdexcept>
#include <string>

namespace radgas {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A structural assumption on the flux or the Riemann data does not hold.
class AssumptionError : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of the operation (e.g. t <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Root-finding target outside the range of f' on the bracket.
class OutOfRangeError : public Error {
 public:
  using Error::Error;
};

// Requested derivative order is not provided.
class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

// Array sizes do not match the grid.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration (grid, scenario, solver setup).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A fit was requested on data that cannot support it.
class FitError : public Error {
 public:
  using Error::Error;
};

// The time step exceeds the CFL bound; carries the admissible step.
class CflViolation : public Error {
 public:
  CflViolation(double requested_dt, double required_dt);
  double requested_dt() const { return requested_; }
  double required_dt() const { return required_; }

 private:
  double requested_;
  double required_;
};

// NaN/Inf appeared during a step. The caller's input state is untouched.
class NumericalBreakdown : public Error {
 public:
  NumericalBreakdown(double t, long step);
  double time() const { return t_; }
  long step() const { return step_; }

 private:
  double t_;
  long step_;
};

}  // namespace radgas
