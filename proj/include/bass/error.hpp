#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bass {

enum class ErrorCode {
  InvalidArgument,
  IndexOutOfRange,
  InvalidGroup,
  InvalidEmbedding,
  MismatchedParents,
  InfiniteIndex,
  InfiniteDegree,
  PresentationMismatch,
  WrongPresentationKind,
  SizeBudgetExceeded,
  NotHyperbolic,
  NotElliptic,
  DegeneratePresentation,
  BudgetExhausted,
  NotApplicable,
  Schema,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::InvalidEmbedding: return "InvalidEmbedding";
    case ErrorCode::MismatchedParents: return "MismatchedParents";
    case ErrorCode::InfiniteIndex: return "InfiniteIndex";
    case ErrorCode::InfiniteDegree: return "InfiniteDegree";
    case ErrorCode::PresentationMismatch: return "PresentationMismatch";
    case ErrorCode::WrongPresentationKind: return "WrongPresentationKind";
    case ErrorCode::SizeBudgetExceeded: return "SizeBudgetExceeded";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::NotElliptic: return "NotElliptic";
    case ErrorCode::DegeneratePresentation: return "DegeneratePresentation";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::Schema: return "Schema";
  }
  return "Unknown";
}

/// All library failures are reported through this exception; `code()` lets
/// callers (the CLI in particular) map failures onto structured output.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace bass
