#pragma once

#include <stdexcept>
#include <string>

namespace kdvred {

// A denominator vanished while evaluating an expression at a point.
struct SingularPoint : std::runtime_error {
  explicit SingularPoint(const std::string& what = "singular point")
      : std::runtime_error(what) {}
};

// A recurrence step required dividing by a zero state entry.
struct SingularStep : std::runtime_error {
  explicit SingularStep(const std::string& what = "singular step")
      : std::runtime_error(what) {}
};

struct BadParams : std::invalid_argument {
  explicit BadParams(const std::string& what) : std::invalid_argument(what) {}
};

struct BadParity : std::invalid_argument {
  explicit BadParity(const std::string& what) : std::invalid_argument(what) {}
};

// The coefficient constraint system did not have a 1-dimensional nullspace.
struct DimensionFailure : std::runtime_error {
  explicit DimensionFailure(const std::string& what) : std::runtime_error(what) {}
};

// A linear system that must be exactly solvable was not.
struct Inconsistent : std::runtime_error {
  explicit Inconsistent(const std::string& what) : std::runtime_error(what) {}
};

// Shift-generated basis vectors failed to span the required space.
struct SpanFailure : std::runtime_error {
  explicit SpanFailure(const std::string& what) : std::runtime_error(what) {}
};

// A sequence recovered from an orbit was not periodic with the declared period.
struct PeriodicityViolation : std::runtime_error {
  explicit PeriodicityViolation(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kdvred
