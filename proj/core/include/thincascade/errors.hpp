#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace thincascade {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent geometric input (profile, polygon).
class GeometryError : public Error {
public:
  using Error::Error;
};

/// A numeric parameter outside its admissible range.
class ParameterError : public Error {
public:
  using Error::Error;
};

/// The mesher could not honour the quality constraints.
class MeshingError : public Error {
public:
  using Error::Error;
};

/// Iterative solver failed to converge; carries the residual history.
class SolverError : public Error {
public:
  SolverError(const std::string& what, std::vector<double> history)
      : Error(what), residual_history(std::move(history)) {}
  std::vector<double> residual_history;
};

/// Derivative data of a requested order is not available.
class CapabilityError : public Error {
public:
  using Error::Error;
};

/// A pipeline stage was requested before the stages it depends on.
class SequencingError : public Error {
public:
  using Error::Error;
};

/// An internal consistency check failed (e.g. a non-vanishing zero mode).
class ConsistencyError : public Error {
public:
  using Error::Error;
};

/// A point lies outside the domain of an evaluator.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Malformed configuration text or unknown keys.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Missing or unreadable file.
class FileError : public Error {
public:
  using Error::Error;
};

}  // namespace thincascade
