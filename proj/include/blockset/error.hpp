#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace blockset {

enum class ErrorCode {
  NotAPrimePower,
  UnsupportedSize,
  DimensionMismatch,
  UniverseTooLarge,
  CodeTooLarge,
  WrongField,
  TooManySymbols,
  DegenerateCode,
  NonSpanningPoints,
  NotSymmetric,
  NotBlocking,
  RankDeficient,
  RetriesExhausted,
  UnsupportedStrategy,
  GraphTooLarge,
  OutOfDomain,
  BracketFailure,
  KTooLarge,
  InsufficientData,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every recoverable failure in the library is reported through this type.
/// The code is stable and is what the CLI prints in its structured error.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace blockset
