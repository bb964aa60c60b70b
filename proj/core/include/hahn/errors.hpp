#pragma once

#include <stdexcept>
#include <string>

namespace hahn {

enum class ErrorCode {
  InvalidArgument,
  Format,
  ProfileMismatch,
  AmbiguousLeading,
  NotAUnit,
  InsufficientPrecision,
  PrecisionIncrease,
  IndeterminateFromPrecision,
  Unresolved,
  PrecisionUnderflow,
  PrecisionExhausted,
  AdaptednessFailed,
  StageUnavailable,
  ContractViolation,
};

const char* errorName(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(errorName(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Contract violations (a certified bound failed) vs. usage/format errors.
  bool isContractViolation() const noexcept {
    return code_ == ErrorCode::AdaptednessFailed || code_ == ErrorCode::ContractViolation ||
           code_ == ErrorCode::AmbiguousLeading;
  }

 private:
  ErrorCode code_;
};

}  // namespace hahn
