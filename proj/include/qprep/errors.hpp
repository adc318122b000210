#pragma once

#include <stdexcept>
#include <string>

namespace qprep {

struct NormalizationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a transpiled stage fails its operator-equivalence check.
struct CompilationError : std::runtime_error {
  double max_deviation;
  CompilationError(const std::string& what, double deviation)
      : std::runtime_error(what), max_deviation(deviation) {}
};

}  // namespace qprep
