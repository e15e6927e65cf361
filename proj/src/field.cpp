#include "ratrecon/field.hpp"

#include <charconv>
#include <ostream>

#include "ratrecon/rng.hpp"

namespace ratrecon {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::InvalidField: return "InvalidField";
    case Errc::ParseError: return "ParseError";
    case Errc::ZeroDenominator: return "ZeroDenominator";
    case Errc::ZeroFunction: return "ZeroFunction";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::NonSquare: return "NonSquare";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::PrefixTooShort: return "PrefixTooShort";
    case Errc::NoSolution: return "NoSolution";
    case Errc::PoleAtOrigin: return "PoleAtOrigin";
    case Errc::DegenerateInput: return "DegenerateInput";
    case Errc::CalibrationFailure: return "CalibrationFailure";
    case Errc::BetaZero: return "BetaZero";
    case Errc::NoFit: return "NoFit";
    case Errc::Ambiguous: return "Ambiguous";
    case Errc::BudgetExhausted: return "BudgetExhausted";
    case Errc::DomainTooSparse: return "DomainTooSparse";
    case Errc::TooManyFailures: return "TooManyFailures";
    case Errc::EmptyHistogram: return "EmptyHistogram";
    case Errc::AnchorSearchFailed: return "AnchorSearchFailed";
    case Errc::VerificationFailed: return "VerificationFailed";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownVariable: return "UnknownVariable";
    case Errc::NegativeExponent: return "NegativeExponent";
    case Errc::UndefinedAt: return "UndefinedAt";
  }
  return "Unknown";
}

namespace {

constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 63;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t reduce_mpz(const mpz_class& v, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p);
  return r.get_ui();
}

mpz_class parse_integer(std::string_view text) {
  if (text.empty()) throw Error(Errc::ParseError, "empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw Error(Errc::ParseError, "sign without digits");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9')
      throw Error(Errc::ParseError, "invalid digit in '" + std::string(text) + "'");
  }
  mpz_class v(std::string(text.substr(start)), 10);
  return text[0] == '-' ? mpz_class(-v) : v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

std::uint64_t inverse_mod(std::uint64_t v, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  std::uint64_t r = p, new_r = v % p;
  if (new_r == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  while (new_r != 0) {
    std::uint64_t q = r / new_r;
    std::int64_t tmp_t = t - static_cast<std::int64_t>(q) * new_t;
    t = new_t;
    new_t = tmp_t;
    std::uint64_t tmp_r = r - q * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  return t < 0 ? static_cast<std::uint64_t>(t + static_cast<std::int64_t>(p)) : static_cast<std::uint64_t>(t);
}

// ---------------------------------------------------------------- Field

Field Field::prime(std::uint64_t p, bool allow_small) {
  if (p < 2 || p >= kMaxModulus) throw Error(Errc::InvalidField, "modulus out of range: " + std::to_string(p));
  mpz_class z;
  mpz_set_ui(z.get_mpz_t(), p);
  if (mpz_probab_prime_p(z.get_mpz_t(), 30) == 0)
    throw Error(Errc::InvalidField, "modulus is not prime: " + std::to_string(p));
  if (p < 5 && !allow_small)
    throw Error(Errc::InvalidField, "prime " + std::to_string(p) + " < 5 rejected (pass allow_small to override)");
  return Field(Kind::Prime, p);
}

Field Field::parse(std::string_view text, bool allow_small) {
  text = trim(text);
  if (text == "q" || text == "Q") return rationals();
  if (text.starts_with("fp:")) {
    std::uint64_t p = 0;
    auto digits = text.substr(3);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
      throw Error(Errc::InvalidField, "bad modulus in '" + std::string(text) + "'");
    return prime(p, allow_small);
  }
  throw Error(Errc::InvalidField, "expected \"q\" or \"fp:<p>\", got '" + std::string(text) + "'");
}

std::string Field::to_string() const {
  return is_rational() ? "q" : "fp:" + std::to_string(modulus_);
}

FieldElement Field::zero() const { return from_int(0); }
FieldElement Field::one() const { return from_int(1); }

FieldElement Field::from_int(long v) const {
  if (is_rational()) return FieldElement(mpq_class(v));
  return from_integer(mpz_class(v));
}

FieldElement Field::from_integer(const mpz_class& v) const {
  if (is_rational()) return FieldElement(mpq_class(v));
  return FieldElement::residue(reduce_mpz(v, modulus_), modulus_);
}

FieldElement Field::from_rational(const mpq_class& v) const {
  if (is_rational()) return FieldElement(v);
  return from_integer(v.get_num()) / from_integer(v.get_den());
}

FieldElement Field::parse_element(std::string_view text) const {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return from_integer(parse_integer(text));
  mpz_class num = parse_integer(trim(text.substr(0, slash)));
  mpz_class den = parse_integer(trim(text.substr(slash + 1)));
  if (den == 0) throw Error(Errc::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
  return from_integer(num) / from_integer(den);
}

// ---------------------------------------------------------------- FieldElement

Field FieldElement::field() const {
  if (is_rational()) return Field::rationals();
  return Field(Field::Kind::Prime, std::get<Residue>(value_).modulus);
}

bool FieldElement::is_zero() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return sgn(*q) == 0;
  return std::get<Residue>(value_).value == 0;
}

bool FieldElement::is_one() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return *q == 1;
  return std::get<Residue>(value_).value == 1;
}

FieldElement FieldElement::zero_like() const {
  if (is_rational()) return FieldElement();
  return FieldElement(Residue{0, std::get<Residue>(value_).modulus});
}

FieldElement FieldElement::one_like() const {
  if (is_rational()) return FieldElement(mpq_class(1));
  return FieldElement(Residue{1, std::get<Residue>(value_).modulus});
}

void FieldElement::check_same(const FieldElement& o) const {
  if (value_.index() != o.value_.index())
    throw Error(Errc::FieldMismatch, "cannot combine elements of " + field().to_string() + " and " + o.field().to_string());
  if (!is_rational() && std::get<Residue>(value_).modulus != std::get<Residue>(o.value_).modulus)
    throw Error(Errc::FieldMismatch, "cannot combine elements of " + field().to_string() + " and " + o.field().to_string());
}

FieldElement FieldElement::operator-() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return FieldElement(mpq_class(-*q));
  const auto& r = std::get<Residue>(value_);
  return FieldElement(Residue{r.value == 0 ? 0 : r.modulus - r.value, r.modulus});
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero");
  if (auto* q = std::get_if<mpq_class>(&value_)) return FieldElement(mpq_class(1 / *q));
  const auto& r = std::get<Residue>(value_);
  return FieldElement(Residue{inverse_mod(r.value, r.modulus), r.modulus});
}

FieldElement FieldElement::pow(std::uint64_t e) const {
  FieldElement result = one_like();
  FieldElement base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check_same(o);
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    *q += std::get<mpq_class>(o.value_);
  } else {
    auto& r = std::get<Residue>(value_);
    std::uint64_t s = r.value + std::get<Residue>(o.value_).value;
    r.value = s >= r.modulus ? s - r.modulus : s;
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  check_same(o);
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    *q -= std::get<mpq_class>(o.value_);
  } else {
    auto& r = std::get<Residue>(value_);
    std::uint64_t b = std::get<Residue>(o.value_).value;
    r.value = r.value >= b ? r.value - b : r.value + (r.modulus - b);
  }
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  check_same(o);
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    *q *= std::get<mpq_class>(o.value_);
  } else {
    auto& r = std::get<Residue>(value_);
    r.value = mul_mod(r.value, std::get<Residue>(o.value_).value, r.modulus);
  }
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  check_same(o);
  if (o.is_zero()) throw Error(Errc::DivisionByZero, "division by zero");
  if (auto* q = std::get_if<mpq_class>(&value_)) {
    *q /= std::get<mpq_class>(o.value_);
  } else {
    auto& r = std::get<Residue>(value_);
    r.value = mul_mod(r.value, inverse_mod(std::get<Residue>(o.value_).value, r.modulus), r.modulus);
  }
  return *this;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  a.check_same(b);
  if (a.is_rational()) return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
  return std::get<FieldElement::Residue>(a.value_).value == std::get<FieldElement::Residue>(b.value_).value;
}

std::string FieldElement::to_string() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return q->get_str();
  return std::to_string(std::get<Residue>(value_).value);
}

mpq_class FieldElement::lift() const {
  if (auto* q = std::get_if<mpq_class>(&value_)) return *q;
  const auto& r = std::get<Residue>(value_);
  mpz_class v;
  mpz_set_ui(v.get_mpz_t(), r.value);
  if (r.value > r.modulus / 2) {
    mpz_class p;
    mpz_set_ui(p.get_mpz_t(), r.modulus);
    v -= p;
  }
  return mpq_class(v);
}

std::string FieldElement::to_signed_string() const { return lift().get_str(); }

std::ostream& operator<<(std::ostream& os, const FieldElement& x) { return os << x.to_string(); }

// ---------------------------------------------------------------- enumeration

mpq_class enumerate_countable(std::uint64_t i) {
  if (i == 0) return mpq_class(0);
  std::uint64_t k = (i + 1) / 2;
  // Calkin-Wilf: q_k = fusc(k) / fusc(k + 1), Stern's diatomic sequence.
  auto fusc = [](std::uint64_t n) {
    mpz_class a = 1, b = 0;
    while (n > 0) {
      if (n & 1) b += a;
      else a += b;
      n >>= 1;
    }
    return b;
  };
  mpq_class q(fusc(k), fusc(k + 1));
  q.canonicalize();
  return (i % 2 == 1) ? q : mpq_class(-q);
}

// ---------------------------------------------------------------- rng

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

Rng Rng::derived(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL + 1)));
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(Errc::SizeMismatch, "Rng::below(0)");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(below(span));
}

FieldElement random_element(const Field& field, Rng& rng, std::uint64_t height_bound) {
  if (!field.is_rational()) return FieldElement::residue(rng.below(field.modulus()), field.modulus());
  auto h = static_cast<std::int64_t>(height_bound < 1 ? 1 : height_bound);
  long num = rng.uniform(-h, h);
  long den = rng.uniform(1, h);
  return FieldElement(mpq_class(num, den));
}

FieldElement random_nonzero(const Field& field, Rng& rng, std::uint64_t height_bound) {
  for (;;) {
    auto x = random_element(field, rng, height_bound);
    if (!x.is_zero()) return x;
  }
}

}  // namespace ratrecon
