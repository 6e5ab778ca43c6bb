#pragma once

#include <stdexcept>
#include <string>

namespace bhardy {

// Invalid inputs (bad arguments, malformed documents). CLI maps these to exit 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A computation could not be completed reliably. CLI maps these to exit 1.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// A rank decision had no certified singular-value gap.
class IndeterminateRankError : public NumericalError {
 public:
  explicit IndeterminateRankError(const std::string& what) : NumericalError(what) {}
};

// The truncation window cannot support the requested computation.
class TruncationArtifactError : public NumericalError {
 public:
  explicit TruncationArtifactError(const std::string& what) : NumericalError(what) {}
};

}  // namespace bhardy
