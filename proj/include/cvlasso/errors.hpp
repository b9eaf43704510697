#pragma once

#include <stdexcept>
#include <string>

namespace cvlasso {

// File- or input-level problem: unreadable CSV, ragged rows, dimension
// mismatches between files. Subclasses std::invalid_argument so callers that
// only care about the broad category still catch it.
struct DataError : std::invalid_argument {
  explicit DataError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Raised instead of returning a non-converged fit when strict mode is on.
struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cvlasso
