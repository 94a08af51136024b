#pragma once

#include <stdexcept>
#include <string>

namespace hyperdimer {

// Bad user-supplied parameters or preconditions (CLI exit code 2).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Solver / numerical failures (CLI exit code 3).
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal consistency failures (malformed maps, duality breakage).
struct StructuralError : std::runtime_error {
  explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hyperdimer
