#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ratrecon {

enum class Errc {
  DivisionByZero,
  FieldMismatch,
  InvalidField,
  ParseError,
  ZeroDenominator,
  ZeroFunction,
  ZeroPolynomial,
  NonSquare,
  SizeMismatch,
  PrefixTooShort,
  NoSolution,
  PoleAtOrigin,
  DegenerateInput,
  CalibrationFailure,
  BetaZero,
  NoFit,
  Ambiguous,
  BudgetExhausted,
  DomainTooSparse,
  TooManyFailures,
  EmptyHistogram,
  AnchorSearchFailed,
  VerificationFailed,
  SyntaxError,
  UnknownVariable,
  NegativeExponent,
  UndefinedAt,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it to a stable exit status.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

}  // namespace ratrecon
