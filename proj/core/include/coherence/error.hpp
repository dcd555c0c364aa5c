#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace coherence {

enum class ErrorCode {
  // Caller supplied something out of range or of the wrong shape.
  BadParams,
  BadAlpha,
  DimensionMismatch,
  WrongSystemShape,
  TooLarge,
  RangeExceeded,
  NotPure,
  NotBlockDiagonal,
  InvalidState,
  // The numbers themselves misbehaved.
  NonHermitian,
  NotPSD,
  AmbiguousBlocking,
  QfiOutOfRange,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for codes that signal a numerical failure rather than bad input.
constexpr bool is_numerical(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonHermitian:
    case ErrorCode::NotPSD:
    case ErrorCode::AmbiguousBlocking:
    case ErrorCode::QfiOutOfRange:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace coherence
