#pragma once

#include <stdexcept>
#include <string>

namespace graphcalc {

enum class ErrorCode {
  SelfLoop,
  DuplicateEdge,
  NonPositiveWeight,
  Disconnected,
  EmptyGraph,
  DisconnectedDraw,
  BadParams,
  DomainMismatch,
  NonFinite,
  ComplexNotAllowed,
  Parse,
  Io,
  SingularSystem,
  IncompatibleRhs,
  SingularJacobian,
  NotASolution,
  NegativeInput,
  BadStart,
  LinearSolveFailure,
  ConvergenceFailure,
  InvalidPotential,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the core carries one of the codes above; the C API
/// maps them one-to-one onto status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace graphcalc
