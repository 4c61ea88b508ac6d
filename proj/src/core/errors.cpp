#include "errors.hpp"

namespace graphcalc {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::DisconnectedDraw: return "DisconnectedDraw";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::ComplexNotAllowed: return "ComplexNotAllowed";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::IncompatibleRhs: return "IncompatibleRHS";
    case ErrorCode::SingularJacobian: return "SingularJacobian";
    case ErrorCode::NotASolution: return "NotASolution";
    case ErrorCode::NegativeInput: return "NegativeInput";
    case ErrorCode::BadStart: return "BadStart";
    case ErrorCode::LinearSolveFailure: return "LinearSolveFailure";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::InvalidPotential: return "InvalidPotential";
  }
  return "Unknown";
}

}  // namespace graphcalc
