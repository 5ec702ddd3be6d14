#pragma once

#include <stdexcept>
#include <string>

namespace percfpp {

// Raised when an operation receives arguments outside its domain.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

// Raised when an estimator cannot produce a result for the given model
// (for example a crossing-probability bracket that never reaches 1/2).
class EstimationError : public std::runtime_error {
 public:
  explicit EstimationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace percfpp
