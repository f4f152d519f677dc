#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qgap {

/// Requested problem size exceeds a hard capacity guard.
class CapacityError : public std::runtime_error {
public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid parameter combination (maps to CLI exit code 2).
class UsageError : public std::runtime_error {
public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative solver failed to reach tolerance; carries the best residuals seen.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(const std::string& what, std::vector<double> residuals)
      : std::runtime_error(what), best_residuals(std::move(residuals)) {}
  std::vector<double> best_residuals;
};

/// Any other numerical failure (ambiguous Pfaffian sign, empty bracket, ...).
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qgap
