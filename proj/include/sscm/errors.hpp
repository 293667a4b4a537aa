#pragma once

#include <stdexcept>
#include <string>

namespace sscm {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidDimensionError : Error {
  using Error::Error;
};

// A sample row was exactly zero; carries the offending row index.
struct DegenerateObservationError : Error {
  DegenerateObservationError(const std::string& what, int row_index)
      : Error(what), row(row_index) {}
  int row;
};

struct ContractViolation : Error {
  using Error::Error;
};

struct NumericalError : Error {
  using Error::Error;
};

struct UnsupportedOrderError : Error {
  using Error::Error;
};

struct SingularSeriesError : Error {
  using Error::Error;
};

// Stieltjes solver did not converge; carries the last residual seen.
struct SolverFailure : Error {
  SolverFailure(const std::string& what, double last_residual)
      : Error(what), residual(last_residual) {}
  double residual;
};

struct SupportResolutionError : Error {
  using Error::Error;
};

// Moment inversion produced complex or coincident atoms: the moment
// sequence is not realizable by the requested number of atoms.
struct InvalidMomentSequenceError : Error {
  using Error::Error;
};

// Moment inversion produced a distribution outside the parameter space
// (negative weight or nonpositive atom).
struct InfeasiblePsdError : Error {
  using Error::Error;
};

struct DegeneratePsdError : Error {
  using Error::Error;
};

struct DegenerateNullError : Error {
  using Error::Error;
};

}  // namespace sscm
