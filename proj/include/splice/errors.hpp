#pragma once

#include <stdexcept>
#include <string>

namespace splice {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain where the quantity is defined.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid construction parameters (grid resolution, sample counts, schedules).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Input data violates a sign or finiteness requirement.
class DataError : public Error {
 public:
  using Error::Error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Kernel evaluated at coincident points.
class SingularityError : public Error {
 public:
  using Error::Error;
};

/// Seed region whose Green's convolution vanishes at a test point.
class DegenerateSeedError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver stopped without meeting its tolerance.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace splice
