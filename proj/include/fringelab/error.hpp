#pragma once

#include <stdexcept>
#include <string>

namespace fringelab {

enum class ErrorCode {
  InvalidDimension,
  InvalidParameter,
  NotHermitian,
  NotPositive,
  NotNormalized,
  NonFinite,
  OptimizerStalled,
  InconsistentObservables,
  FeasibilityViolation,
  NoConsistentState,
  InvalidPlan,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Raised when the refinement budget runs out; keeps the best point reached.
class OptimizerStalled : public Error {
 public:
  OptimizerStalled(double best_value, const std::string& what)
      : Error(ErrorCode::OptimizerStalled, what), best_value_(best_value) {}

  double best_value() const noexcept { return best_value_; }

 private:
  double best_value_;
};

}  // namespace fringelab
