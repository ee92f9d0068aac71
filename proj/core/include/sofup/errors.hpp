#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sofup {

enum class ErrorCode {
  DimensionMismatch,
  RankDeficient,
  EigenFailure,
  NotStable,
  NotSymmetric,
  BudgetExceeded,
  DomainError,
  QuadratureFailure,
  DegenerateCoverage,
  ZeroPerturbation,
  NormExceedsBound,
  DimensionOverflow,
  EmptyGrid,
  GridMismatch,
  StepTooLarge,
  NumericalInconsistency,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the core library carries one of the codes above so
// front ends can map it to an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sofup
