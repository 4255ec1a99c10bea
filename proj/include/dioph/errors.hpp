#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dioph {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  GeneratorExhausted,
  UnsupportedKind,
  ZeroPolynomial,
  OverflowGuard,
  DegreeZero,
  DegreeTooLarge,
  NotCoprime,
  ZeroValue,
  ZeroXi,
  PrecisionExhausted,
  TooFewRecords,
  TooFewRows,
  BudgetExceeded,
  IncompatibleBundles,
  MissingTable,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// CLI can map it to an exit status and tests can match on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::GeneratorExhausted: return "GeneratorExhausted";
    case ErrorCode::UnsupportedKind: return "UnsupportedKind";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::OverflowGuard: return "OverflowGuard";
    case ErrorCode::DegreeZero: return "DegreeZero";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::ZeroValue: return "ZeroValue";
    case ErrorCode::ZeroXi: return "ZeroXi";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::TooFewRecords: return "TooFewRecords";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::IncompatibleBundles: return "IncompatibleBundles";
    case ErrorCode::MissingTable: return "MissingTable";
  }
  return "Unknown";
}

}  // namespace dioph
