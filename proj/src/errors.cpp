#include "kinship/errors.hpp"

namespace kinship {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedBreakpoints: return "MalformedBreakpoints";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::NotOnto: return "NotOnto";
    case ErrorCode::NotCommuting: return "NotCommuting";
    case ErrorCode::InputIsHomeomorphism: return "InputIsHomeomorphism";
    case ErrorCode::InputsEqual: return "InputsEqual";
    case ErrorCode::NotHomeomorphism: return "NotHomeomorphism";
    case ErrorCode::HasConstantSegment: return "HasConstantSegment";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::CertificateVerificationFailed: return "CertificateVerificationFailed";
    case ErrorCode::SizeTooLarge: return "SizeTooLarge";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Syntax: return "Syntax";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

Error::Error(ErrorCode code, const std::string& detail, std::size_t line)
    : std::runtime_error(std::string(to_string(code)) + " (line " + std::to_string(line) +
                         "): " + detail),
      code_(code),
      line_(line) {}

}  // namespace kinship
