#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace padic {

enum class ErrorKind {
  InvalidArgument,
  NonPrimeBase,
  BaseMismatch,
  NotInvertible,
  ZeroOperand,
  ZeroInput,
  PrecisionLoss,
  NoSquareRoot,
  OddValuation,
  EvenPrimeUnsupported,
  NoNontrivialIdempotent,
  InsufficientDepth,
  FactorizationLimitExceeded,
  SyntaxError,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonPrimeBase: return "NonPrimeBase";
    case ErrorKind::BaseMismatch: return "BaseMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::ZeroOperand: return "ZeroOperand";
    case ErrorKind::ZeroInput: return "ZeroInput";
    case ErrorKind::PrecisionLoss: return "PrecisionLoss";
    case ErrorKind::NoSquareRoot: return "NoSquareRoot";
    case ErrorKind::OddValuation: return "OddValuation";
    case ErrorKind::EvenPrimeUnsupported: return "EvenPrimeUnsupported";
    case ErrorKind::NoNontrivialIdempotent: return "NoNontrivialIdempotent";
    case ErrorKind::InsufficientDepth: return "InsufficientDepth";
    case ErrorKind::FactorizationLimitExceeded: return "FactorizationLimitExceeded";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every failure raised by the library. The kind is stable and is what the
/// CLI maps onto exit codes; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace padic
