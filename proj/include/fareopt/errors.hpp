#pragma once

#include <stdexcept>
#include <string>

namespace fareopt {

/// Bad configuration or input data. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure (non-convergent solve, structurally invalid setup).
/// The CLI maps this to exit code 3.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fareopt
