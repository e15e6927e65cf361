#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ratrecon/field.hpp"
#include "ratrecon/matrix.hpp"

namespace ratrecon {

/// Degree of the zero polynomial.
inline constexpr int kNegInfDegree = std::numeric_limits<int>::min();

/// Dense univariate polynomial, coefficients indexed by power with the
/// highest-power zeros stripped. The zero polynomial has no coefficients.
class Poly1 {
public:
  explicit Poly1(Field field) : field_(field) {}
  Poly1(Field field, std::vector<FieldElement> coeffs);

  /// Coefficients listed lowest power first.
  static Poly1 from_ints(Field field, std::initializer_list<long> coeffs);
  static Poly1 monomial(const FieldElement& c, std::size_t power);
  static Poly1 constant(const FieldElement& c) { return monomial(c, 0); }
  /// x - a
  static Poly1 linear_root(const FieldElement& a);

  const Field& field() const noexcept { return field_; }
  const std::vector<FieldElement>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  int degree() const noexcept { return coeffs_.empty() ? kNegInfDegree : static_cast<int>(coeffs_.size()) - 1; }
  /// Zero past the degree.
  FieldElement coeff(std::size_t k) const;
  const FieldElement& lead() const;

  FieldElement eval(const FieldElement& a) const;
  Poly1 monic() const;
  Poly1 scaled(const FieldElement& c) const;

  Poly1 operator-() const;
  friend Poly1 operator+(const Poly1& a, const Poly1& b);
  friend Poly1 operator-(const Poly1& a, const Poly1& b);
  friend Poly1 operator*(const Poly1& a, const Poly1& b);
  friend bool operator==(const Poly1& a, const Poly1& b) { return a.field_ == b.field_ && a.coeffs_ == b.coeffs_; }

  std::string to_string(const std::string& var = "x1") const;

private:
  void strip();

  Field field_;
  std::vector<FieldElement> coeffs_;
};

/// Quotient and remainder; throws DivisionByZero for a zero divisor.
std::pair<Poly1, Poly1> divmod(const Poly1& a, const Poly1& b);
/// Monic gcd (zero when both inputs are zero).
Poly1 gcd(const Poly1& a, const Poly1& b);

/// Univariate rational function in canonical form: coprime, monic denominator.
class RatFun1 {
public:
  /// Throws ZeroDenominator.
  static RatFun1 normalize(Poly1 num, Poly1 den);
  static RatFun1 from_poly(Poly1 p) { Poly1 one = Poly1::constant(p.field().one()); return normalize(std::move(p), std::move(one)); }

  const Poly1& num() const noexcept { return num_; }
  const Poly1& den() const noexcept { return den_; }
  const Field& field() const noexcept { return num_.field(); }
  bool is_zero() const noexcept { return num_.is_zero(); }

  /// Throws UndefinedAt where the denominator vanishes.
  FieldElement eval(const FieldElement& a) const;
  std::optional<FieldElement> try_eval(const FieldElement& a) const;

  /// Same function with numerator and denominator scaled so den(0) = 1;
  /// requires den(0) != 0.
  std::pair<Poly1, Poly1> with_unit_constant_term() const;

  friend bool operator==(const RatFun1& a, const RatFun1& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

private:
  RatFun1(Poly1 num, Poly1 den) : num_(std::move(num)), den_(std::move(den)) {}
  Poly1 num_;
  Poly1 den_;
};

/// Mapping degree and order at infinity of a nonzero function:
/// deg = max(deg num, deg den), ord_inf = deg num - deg den, so
/// n = deg + min(0, ord_inf) = deg num and m = deg - max(0, ord_inf) = deg den.
struct DegreeOrd {
  int deg;
  int ord_inf;
  int n() const { return deg + std::min(0, ord_inf); }
  int m() const { return deg - std::max(0, ord_inf); }
  friend bool operator==(const DegreeOrd&, const DegreeOrd&) = default;
};

/// Throws ZeroFunction for f = 0.
DegreeOrd degree_and_ord(const RatFun1& f);

struct Sylvester {
  ExactMatrix matrix;
  FieldElement resultant;
};

/// Sylvester matrix of size deg P + deg Q: the first deg Q rows carry shifted
/// coefficients of P, the next deg P rows shifted coefficients of Q, highest
/// power first. The resultant is its determinant. Throws ZeroPolynomial.
Sylvester sylvester_and_resultant(const Poly1& p, const Poly1& q);
FieldElement resultant(const Poly1& p, const Poly1& q);

/// prod_{i<j} (a_j - a_i); one for fewer than two points.
FieldElement vandermonde_product(const Field& field, std::span<const FieldElement> points);

}  // namespace ratrecon
