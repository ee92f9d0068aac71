#include "sofup/errors.hpp"

namespace sofup {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::EigenFailure: return "EigenFailure";
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::DegenerateCoverage: return "DegenerateCoverage";
    case ErrorCode::ZeroPerturbation: return "ZeroPerturbation";
    case ErrorCode::NormExceedsBound: return "NormExceedsBound";
    case ErrorCode::DimensionOverflow: return "DimensionOverflow";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::NumericalInconsistency: return "NumericalInconsistency";
  }
  return "Unknown";
}

}  // namespace sofup
