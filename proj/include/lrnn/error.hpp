#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lrnn {

enum class ErrorKind {
  InvalidDomain,
  InvalidCount,
  UnsupportedCount,
  DegenerateBox,
  DimensionMismatch,
  OutOfDomain,
  MissingBoundaryData,
  ExactSolutionMissing,
  NonFinite,
  ParseError,
  ValidationError,
  Io,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDomain: return "invalid-domain";
    case ErrorKind::InvalidCount: return "invalid-count";
    case ErrorKind::UnsupportedCount: return "unsupported-count";
    case ErrorKind::DegenerateBox: return "degenerate-box";
    case ErrorKind::DimensionMismatch: return "dimension-mismatch";
    case ErrorKind::OutOfDomain: return "out-of-domain";
    case ErrorKind::MissingBoundaryData: return "missing-boundary-data";
    case ErrorKind::ExactSolutionMissing: return "exact-solution-missing";
    case ErrorKind::NonFinite: return "non-finite";
    case ErrorKind::ParseError: return "parse-error";
    case ErrorKind::ValidationError: return "validation-error";
    case ErrorKind::Io: return "io-error";
  }
  return "unknown";
}

/// Single exception type for the library; `kind()` carries the machine-readable category.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace lrnn
