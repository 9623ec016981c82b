#include "latqd/errors.hpp"

namespace latqd {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ModulusTooSmall: return "ModulusTooSmall";
    case ErrorCode::GeneratorOutOfRange: return "GeneratorOutOfRange";
    case ErrorCode::EmptyGenerator: return "EmptyGenerator";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::CoefficientOverflow: return "CoefficientOverflow";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::TrialsZero: return "TrialsZero";
    case ErrorCode::NoValidCandidate: return "NoValidCandidate";
  }
  return "Unknown";
}

}  // namespace latqd
