#pragma once

#include <stdexcept>
#include <string>

namespace metriq {

// Base class for all domain failures.  Each carries a stable machine-readable
// code (used verbatim by the CLI error output) next to the human detail text.
class MetriqError : public std::runtime_error {
  public:
    MetriqError(std::string code, const std::string& detail)
        : std::runtime_error(detail), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

  private:
    std::string code_;
};

// Inversion of zero in a cyclotomic field.
class DivisionByZeroError : public MetriqError {
  public:
    explicit DivisionByZeroError(const std::string& detail)
        : MetriqError("DivisionByZero", detail) {}
};

// An enumeration or search exceeded its configured bound.
class TooLargeError : public MetriqError {
  public:
    explicit TooLargeError(const std::string& detail)
        : MetriqError("TooLarge", detail) {}
};

// Condensation requested along a subgroup on which the form is not trivial.
class NotIsotropicError : public MetriqError {
  public:
    explicit NotIsotropicError(const std::string& detail)
        : MetriqError("NotIsotropic", detail) {}
};

// An operation that requires a nondegenerate form received a degenerate one.
class DegenerateError : public MetriqError {
  public:
    explicit DegenerateError(const std::string& detail)
        : MetriqError("Degenerate", detail) {}
};

// The two-cochain linear system has no solution.  For isotropic subgroups a
// solution always exists, so seeing this signals an upstream bug.
class NoSolutionError : public MetriqError {
  public:
    explicit NoSolutionError(const std::string& detail)
        : MetriqError("NoSolution", detail) {}
};

// The associator/braiding data failed its coherence checks.
class ConstructionFailedError : public MetriqError {
  public:
    explicit ConstructionFailedError(const std::string& detail)
        : MetriqError("ConstructionFailed", detail) {}
};

// A quantum-group module violated a defining algebra relation.
class ModuleRelationViolationError : public MetriqError {
  public:
    explicit ModuleRelationViolationError(const std::string& detail)
        : MetriqError("ModuleRelationViolation", detail) {}
};

// A quantity that must be constant on cosets failed to be.
class WellDefinednessError : public MetriqError {
  public:
    explicit WellDefinednessError(const std::string& detail)
        : MetriqError("WellDefinednessViolation", detail) {}
};

// A theorem-backed internal consistency check failed; signals a bug.
class AssertionFailedError : public MetriqError {
  public:
    explicit AssertionFailedError(const std::string& detail)
        : MetriqError("AssertionFailed", detail) {}
};

// Malformed or inconsistent input data.
class InvalidInputError : public MetriqError {
  public:
    explicit InvalidInputError(const std::string& detail)
        : MetriqError("InvalidInput", detail) {}
};

} // namespace metriq
