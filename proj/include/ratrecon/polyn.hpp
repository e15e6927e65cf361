#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ratrecon/field.hpp"
#include "ratrecon/poly1.hpp"

namespace ratrecon {

/// Exponent vector, one entry per variable.
using Monomial = std::vector<std::uint32_t>;

/// Graded lexicographic order: total degree first, then x1 > x2 > ... .
struct GrLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial. Terms are kept in ascending graded-lex
/// order with no explicit zero coefficients.
class PolyN {
public:
  using Terms = std::map<Monomial, FieldElement, GrLexLess>;

  PolyN(Field field, std::size_t nvars) : field_(field), nvars_(nvars) {}

  static PolyN constant(const FieldElement& c, std::size_t nvars);
  /// The variable x_{index+1}.
  static PolyN variable(Field field, std::size_t nvars, std::size_t index);
  /// Embeds p as a polynomial in variable `var` of an nvars-variate ring.
  static PolyN from_poly1(const Poly1& p, std::size_t nvars, std::size_t var);

  const Field& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const;
  int total_degree() const;
  int degree_in(std::size_t var) const;

  /// Greatest term in graded-lex order; throws ZeroPolynomial.
  const Monomial& leading_monomial() const;
  const FieldElement& leading_coeff() const;

  void add_term(const Monomial& m, const FieldElement& c);

  FieldElement eval(std::span<const FieldElement> point) const;

  /// Same polynomial in a ring with more variables (new ones appended).
  PolyN with_nvars(std::size_t nvars) const;
  /// Sets variable `var` to `value`, keeping the number of variables.
  PolyN substitute(std::size_t var, const FieldElement& value) const;
  /// Restricts to the univariate polynomial in `var` obtained by fixing the
  /// other coordinates of `point`.
  Poly1 restrict_to(std::size_t var, std::span<const FieldElement> point) const;

  /// Coefficients with respect to `var`; each coefficient has the
  /// exponent of `var` cleared.
  std::map<std::uint32_t, PolyN> coefficients_in(std::size_t var) const;

  PolyN zero_like() const { return PolyN(field_, nvars_); }
  PolyN one_like() const { return constant(field_.one(), nvars_); }

  PolyN scaled(const FieldElement& c) const;
  PolyN pow(std::uint64_t e) const;
  /// Divides by the leading coefficient.
  PolyN monic() const;

  PolyN operator-() const;
  friend PolyN operator+(const PolyN& a, const PolyN& b);
  friend PolyN operator-(const PolyN& a, const PolyN& b);
  friend PolyN operator*(const PolyN& a, const PolyN& b);
  friend bool operator==(const PolyN& a, const PolyN& b);

  /// Expanded form, terms in descending graded-lex order, e.g. "x1*x2 - 3*x2^2 + 1".
  /// Residues print in the symmetric range.
  std::string to_string() const;

private:
  void check_compatible(const PolyN& o) const;

  Field field_;
  std::size_t nvars_;
  Terms terms_;
};

/// a / b when b divides a exactly, nullopt otherwise. Throws DivisionByZero.
std::optional<PolyN> divide_exact(const PolyN& a, const PolyN& b);

/// Monic (graded-lex leading coefficient 1) greatest common divisor, computed
/// by the recursive primitive polynomial remainder sequence.
PolyN gcd(const PolyN& a, const PolyN& b);

/// Content of `a` as a polynomial in `var`: the gcd of its coefficients.
PolyN content_in(const PolyN& a, std::size_t var);

/// Multivariate rational function in canonical form: numerator and
/// denominator coprime; over Q both have integer coefficients with overall
/// gcd one and positive graded-lex leading denominator coefficient; over F_p
/// the leading denominator coefficient is one.
class RatFunN {
public:
  /// Throws ZeroDenominator.
  static RatFunN normalize(PolyN num, PolyN den);
  static RatFunN from_poly(PolyN p);
  static RatFunN from_ratfun1(const RatFun1& f, std::size_t nvars = 1, std::size_t var = 0);

  const PolyN& num() const noexcept { return num_; }
  const PolyN& den() const noexcept { return den_; }
  const Field& field() const noexcept { return num_.field(); }
  std::size_t nvars() const noexcept { return num_.nvars(); }
  bool is_zero() const noexcept { return num_.is_zero(); }

  /// nullopt where the denominator vanishes.
  std::optional<FieldElement> try_eval(std::span<const FieldElement> point) const;
  /// Throws UndefinedAt where the denominator vanishes.
  FieldElement eval(std::span<const FieldElement> point) const;

  /// Univariate restriction along `var` with the other coordinates of `point` fixed.
  RatFun1 restrict_to(std::size_t var, std::span<const FieldElement> point) const;

  RatFunN with_nvars(std::size_t nvars) const;

  friend RatFunN operator+(const RatFunN& a, const RatFunN& b);
  friend RatFunN operator-(const RatFunN& a, const RatFunN& b);
  friend RatFunN operator*(const RatFunN& a, const RatFunN& b);
  /// Throws ZeroDenominator when b is the zero function.
  friend RatFunN operator/(const RatFunN& a, const RatFunN& b);
  RatFunN operator-() const;
  RatFunN pow(std::uint64_t e) const;

  /// Structural equality of canonical forms.
  friend bool operator==(const RatFunN& a, const RatFunN& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  /// Canonical text format "(num)/(den)".
  std::string to_string() const;

private:
  RatFunN(PolyN num, PolyN den) : num_(std::move(num)), den_(std::move(den)) {}
  PolyN num_;
  PolyN den_;
};

/// Cross-multiplication test a.num * b.den == b.num * a.den, independent of
/// how far each side was reduced.
bool equivalent(const RatFunN& a, const RatFunN& b);

}  // namespace ratrecon
