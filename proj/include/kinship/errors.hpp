#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kinship {

enum class ErrorCode {
  MalformedBreakpoints,
  OutOfDomain,
  NotOnto,
  NotCommuting,
  InputIsHomeomorphism,
  InputsEqual,
  NotHomeomorphism,
  HasConstantSegment,
  BudgetExceeded,
  CertificateVerificationFailed,
  SizeTooLarge,
  Io,
  Syntax,
  InvariantViolation,
  Internal,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);
  Error(ErrorCode code, const std::string& detail, std::size_t line);

  ErrorCode code() const noexcept { return code_; }
  /// Source line for parse errors.
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

}  // namespace kinship
