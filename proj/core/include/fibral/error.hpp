#pragma once

#include <stdexcept>
#include <string>

namespace fibral {

enum class ErrorCode {
  ParseError,
  DuplicateIdentifier,
  NonRationalNumeral,
  UnknownIdentifier,
  PlaceMismatch,
  ProfileUndefinedAtPlace,
  InvalidFiber,
  NotSemidefinite,
  KernelTooLarge,
  InvalidKernelProblem,
  ChoiceMismatch,
  UnsolvableSystem,
  TorsionRequired,
  WidthGuardExceeded,
  KeyMismatch,
  SupportCollision,
  NonzeroPairing,
  NotFiberMultiple,
  InvalidSurface,
  InternalInconsistency,
  ReplayMismatch,
  CertificateBinding,
  IoError,
  UsageError,
};

const char* error_code_name(ErrorCode code);

// All library failures are reported through this type; the code tells
// callers which contract was violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fibral
