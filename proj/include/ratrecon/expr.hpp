#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "ratrecon/polyn.hpp"

namespace ratrecon {

/// Parse failure with the byte offset into the source and the tokens that
/// would have been accepted there. Codes: SyntaxError, UnknownVariable,
/// NegativeExponent.
class ParseFailure : public Error {
public:
  ParseFailure(Errc code, std::size_t offset, std::vector<std::string> expected, const std::string& what);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree.
struct Expr {
  enum class Kind { IntLiteral, Var, Add, Sub, Mul, Div, Neg, Pow };

  Kind kind;
  /// IntLiteral: nonnegative value.
  mpz_class value;
  /// Var: zero-based index (x1 is 0).
  std::size_t var = 0;
  /// Pow: literal exponent.
  std::uint64_t exponent = 0;
  /// Binary operands, or the operand of Neg and the base of Pow in lhs.
  ExprPtr lhs;
  ExprPtr rhs;

  static ExprPtr literal(mpz_class v);
  static ExprPtr variable(std::size_t index);
  static ExprPtr binary(Kind kind, ExprPtr lhs, ExprPtr rhs);
  static ExprPtr neg(ExprPtr operand);
  static ExprPtr pow(ExprPtr base, std::uint64_t exponent);
};

std::string_view kind_name(Expr::Kind kind) noexcept;

/// Structural equality.
bool same_tree(const Expr& a, const Expr& b);

/// Grammar:
///   expr    = term { ("+" | "-") term }
///   term    = unary { ("*" | "/") unary }
///   unary   = "-" unary | power
///   power   = primary [ "^" exponent ]
///   exponent = integer [ "^" exponent ]      (folded, right associative)
///   primary = integer | "x" digits | "(" expr ")"
/// Whitespace is ignored between tokens; variables are x1..x<arity>.
ExprPtr parse_expr(std::string_view src, std::size_t arity);

/// Text with the fewest parentheses that parses back to the same tree.
std::string to_string(const Expr& e);

/// Exact value at `point`; nullopt when some division has a zero divisor.
std::optional<FieldElement> eval_expr(const Expr& e, const Field& field, std::span<const FieldElement> point);

/// The rational function the expression denotes, in `nvars` variables.
/// Throws ZeroDenominator when a divisor is identically zero.
RatFunN expand(const Expr& e, const Field& field, std::size_t nvars);

}  // namespace ratrecon
