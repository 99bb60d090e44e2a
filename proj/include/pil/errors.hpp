#pragma once

#include <stdexcept>
#include <string>

namespace pil {

// Base class so callers can catch the whole family at once.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input fails a mathematical validity requirement (exit code 1 in the CLI).
struct ValidationError : Error {
  explicit ValidationError(const std::string& msg) : Error(msg) {}
};

struct CycleError : ValidationError {
  explicit CycleError(const std::string& msg) : ValidationError(msg) {}
};
struct UnknownLabel : ValidationError {
  explicit UnknownLabel(const std::string& msg) : ValidationError(msg) {}
};
struct ShapeMismatch : ValidationError {
  explicit ShapeMismatch(const std::string& msg) : ValidationError(msg) {}
};
struct ModulusMismatch : ValidationError {
  explicit ModulusMismatch(const std::string& msg) : ValidationError(msg) {}
};
struct NotPrime : ValidationError {
  explicit NotPrime(const std::string& msg) : ValidationError(msg) {}
};
struct NotALattice : ValidationError {
  explicit NotALattice(const std::string& msg) : ValidationError(msg) {}
};
struct PreconditionError : ValidationError {
  explicit PreconditionError(const std::string& msg) : ValidationError(msg) {}
};
struct ThickeningAxiomError : ValidationError {
  explicit ThickeningAxiomError(const std::string& msg) : ValidationError(msg) {}
};
struct BoundaryError : ValidationError {
  explicit BoundaryError(const std::string& msg) : ValidationError(msg) {}
};

// A configured size or search cap was exceeded; the result is unknown,
// not "no" (exit code 2 in the CLI).
struct CapError : Error {
  explicit CapError(const std::string& msg) : Error(msg) {}
};
struct ExplosionError : CapError {
  explicit ExplosionError(const std::string& msg) : CapError(msg) {}
};
struct SearchCapExceeded : CapError {
  explicit SearchCapExceeded(const std::string& msg) : CapError(msg) {}
};

// Malformed documents, unreadable files (exit code 3 in the CLI).
struct IOError : Error {
  explicit IOError(const std::string& msg) : Error(msg) {}
};
struct SchemaError : IOError {
  explicit SchemaError(const std::string& msg) : IOError(msg) {}
};

}  // namespace pil
