#pragma once

#include <stdexcept>
#include <string>

namespace fbspde {

/// Malformed problem data (non-symmetric matrix field, bad shapes).
class StructuralError : public std::runtime_error {
public:
  explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

/// An operation needs a capability the inputs do not provide
/// (missing derivatives, norm order beyond available layers, ...).
class CapabilityError : public std::runtime_error {
public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// Argument outside the operation's domain (epsilon <= 0, lambda <= C+1, ...).
class DomainError : public std::runtime_error {
public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Coefficient or driver evaluation produced a non-finite value.
class EvaluationError : public std::runtime_error {
public:
  explicit EvaluationError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical scheme left its stability region (M-matrix violation,
/// dt*|c| >= 1, Picard divergence, linear solve failure).
class StabilityError : public std::runtime_error {
public:
  explicit StabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// A configured cost cap would be exceeded.
class BudgetError : public std::runtime_error {
public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// A check that needs calibrated constants was invoked without calibration.
class CalibrationRequiredError : public std::runtime_error {
public:
  explicit CalibrationRequiredError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fbspde
