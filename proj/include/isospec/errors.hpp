#pragma once

#include <stdexcept>
#include <string>

namespace isospec {

/// Input violates a type invariant or an operation precondition.
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// A numeric procedure could not produce a trustworthy result.
class NumericFailure : public std::runtime_error {
 public:
  explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace isospec
