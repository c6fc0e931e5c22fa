#pragma once

#include <stdexcept>
#include <string>

namespace qlab {

// Raised when a numeric evaluation cannot meet the requested accuracy:
// either the tracked intermediate magnitude exceeds what the working
// precision can absorb, or a term cap is hit before convergence.
class PrecisionError : public std::runtime_error {
public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

class ConvergenceError : public PrecisionError {
public:
  explicit ConvergenceError(const std::string& what) : PrecisionError(what) {}
};

} // namespace qlab
