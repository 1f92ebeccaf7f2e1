#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace circmem {

enum class ErrorCode {
  EmptyRow,
  NonZeroDiagonal,
  WeightOutOfRange,
  SizeMismatch,
  InvalidPermutation,
  SizeTooLarge,
  MixedSizes,
  ParseError,
  RowSumUnsatisfiable,
  InvalidArgument,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyRow: return "EmptyRow";
    case ErrorCode::NonZeroDiagonal: return "NonZeroDiagonal";
    case ErrorCode::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::SizeTooLarge: return "SizeTooLarge";
    case ErrorCode::MixedSizes: return "MixedSizes";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::RowSumUnsatisfiable: return "RowSumUnsatisfiable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Library-wide exception; carries a machine-checkable code next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace circmem
