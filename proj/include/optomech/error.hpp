#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace optomech {

enum class ErrorKind {
  NonIntegerRatio,
  DriveTooStrong,
  DegenerateOrder,
  StepFailure,
  DimensionMismatch,
  PositivityLoss,
  InsufficientSpan,
  IndexOutOfTruncation,
  Heating,
  InvalidTrace,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

/// Typed failure raised by every module. The kind is stable and is what the
/// CLI reports next to a failed sweep point.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonIntegerRatio: return "NonIntegerRatio";
    case ErrorKind::DriveTooStrong: return "DriveTooStrong";
    case ErrorKind::DegenerateOrder: return "DegenerateOrder";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::PositivityLoss: return "PositivityLoss";
    case ErrorKind::InsufficientSpan: return "InsufficientSpan";
    case ErrorKind::IndexOutOfTruncation: return "IndexOutOfTruncation";
    case ErrorKind::Heating: return "Heating";
    case ErrorKind::InvalidTrace: return "InvalidTrace";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

// Non-fatal diagnostics (e.g. drive strength above the comfortable range).
// Defaults to stderr; tests and the CLI may redirect it.
void warn(std::string_view message);
using WarningSink = void (*)(std::string_view);
WarningSink set_warning_sink(WarningSink sink);

}  // namespace optomech
