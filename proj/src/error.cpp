#include "fringelab/error.hpp"

namespace fringelab {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::OptimizerStalled: return "OptimizerStalled";
    case ErrorCode::InconsistentObservables: return "InconsistentObservables";
    case ErrorCode::FeasibilityViolation: return "FeasibilityViolation";
    case ErrorCode::NoConsistentState: return "NoConsistentState";
    case ErrorCode::InvalidPlan: return "InvalidPlan";
  }
  return "Unknown";
}

}  // namespace fringelab
