#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twolocus {

enum class ErrorKind {
  NotOnSimplex,
  NegativeCoordinate,
  InvalidParams,
  NotAFixedPoint,
  OutOfSlice,
  DegenerateLimit,
  RateUndefined,
  MaxStepsExceeded,
  UsageError,
  IoError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotOnSimplex: return "NotOnSimplex";
    case ErrorKind::NegativeCoordinate: return "NegativeCoordinate";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::NotAFixedPoint: return "NotAFixedPoint";
    case ErrorKind::OutOfSlice: return "OutOfSlice";
    case ErrorKind::DegenerateLimit: return "DegenerateLimit";
    case ErrorKind::RateUndefined: return "RateUndefined";
    case ErrorKind::MaxStepsExceeded: return "MaxStepsExceeded";
    case ErrorKind::UsageError: return "UsageError";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace twolocus
