#pragma once

#include <stdexcept>
#include <string>

namespace cbeam {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input values (non-positive dimensions, bad counts, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation (e.g. arc length beyond [0, L]).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DegenerateCurveError : public Error {
 public:
  using Error::Error;
};

/// Frenet frame requested where the curvature vanishes.
class ZeroCurvatureError : public Error {
 public:
  using Error::Error;
};

/// Closest point is not unique (point outside the injectivity tube).
class AmbiguityError : public Error {
 public:
  using Error::Error;
};

class DirectorDegeneracyError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

class FormulationError : public Error {
 public:
  using Error::Error;
};

class ConstraintConflictError : public Error {
 public:
  using Error::Error;
};

class SingularSystemError : public Error {
 public:
  SingularSystemError(const std::string& what, int suspected_modes)
      : Error(what), suspected_modes_(suspected_modes) {}
  int suspected_modes() const { return suspected_modes_; }

 private:
  int suspected_modes_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Model/study file does not match the schema; message carries the key path.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace cbeam
