#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include "ratrecon/error.hpp"

namespace ratrecon {

class FieldElement;

/// Describes the ground field: the rationals, or F_p for a prime p < 2^63.
/// Serialized as "q" or "fp:<p>".
class Field {
public:
  enum class Kind { Rational, Prime };

  /// Default-constructed descriptor is Q.
  Field() = default;

  static Field rationals() { return Field(); }
  /// Throws InvalidField unless p is prime. Primes below 5 leave too few points
  /// for degree detection and need `allow_small`.
  static Field prime(std::uint64_t p, bool allow_small = false);
  static Field parse(std::string_view text, bool allow_small = false);

  Kind kind() const noexcept { return kind_; }
  bool is_rational() const noexcept { return kind_ == Kind::Rational; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  std::string to_string() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(long v) const;
  FieldElement from_integer(const mpz_class& v) const;
  FieldElement from_rational(const mpq_class& v) const;
  /// Accepts "a" or "a/b" with decimal integers, optional leading '-'.
  FieldElement parse_element(std::string_view text) const;

  friend bool operator==(const Field&, const Field&) = default;

private:
  friend class FieldElement;
  Field(Kind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}

  Kind kind_ = Kind::Rational;
  std::uint64_t modulus_ = 0;
};

/// Immutable exact field element. Rationals are kept reduced; residues live in [0, p).
/// Mixing elements of different fields throws FieldMismatch.
class FieldElement {
public:
  FieldElement() : value_(mpq_class(0)) {}
  explicit FieldElement(mpq_class q) : value_(std::move(q)) { std::get<mpq_class>(value_).canonicalize(); }
  static FieldElement residue(std::uint64_t value, std::uint64_t modulus) {
    return FieldElement(Residue{value % modulus, modulus});
  }

  Field field() const;
  bool is_rational() const noexcept { return std::holds_alternative<mpq_class>(value_); }
  bool is_zero() const;
  bool is_one() const;

  const mpq_class& rational() const { return std::get<mpq_class>(value_); }
  std::uint64_t residue_value() const { return std::get<Residue>(value_).value; }

  FieldElement zero_like() const;
  FieldElement one_like() const;

  FieldElement operator-() const;
  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

  /// Exact equality; throws FieldMismatch across fields.
  friend bool operator==(const FieldElement& a, const FieldElement& b);

  /// Residues in symmetric range (-p/2, p/2] are printed by `to_signed_string`;
  /// `to_string` prints rationals as "a" or "a/b" and residues in [0, p).
  std::string to_string() const;
  std::string to_signed_string() const;

  /// Symmetric-range integer for residues, the rational itself for Q.
  mpq_class lift() const;

private:
  struct Residue {
    std::uint64_t value;
    std::uint64_t modulus;
  };
  explicit FieldElement(Residue r) : value_(r) {}
  void check_same(const FieldElement& o) const;

  std::variant<mpq_class, Residue> value_;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& x);

/// Modular inverse of v mod p by extended Euclid; v must be nonzero mod p.
std::uint64_t inverse_mod(std::uint64_t v, std::uint64_t p);

/// Fixed bijection N -> Q: 0, then for each Calkin-Wilf index k >= 1 the value
/// q_k followed by -q_k.
mpq_class enumerate_countable(std::uint64_t i);

}  // namespace ratrecon

template <>
struct std::hash<ratrecon::FieldElement> {
  std::size_t operator()(const ratrecon::FieldElement& x) const {
    return std::hash<std::string>{}(x.to_string());
  }
};
