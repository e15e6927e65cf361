#include "ratrecon/poly1.hpp"

#include <algorithm>
#include <sstream>

namespace ratrecon {

Poly1::Poly1(Field field, std::vector<FieldElement> coeffs) : field_(field), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) {
    if (c.field() != field_) throw Error(Errc::FieldMismatch, "coefficient outside " + field_.to_string());
  }
  strip();
}

Poly1 Poly1::from_ints(Field field, std::initializer_list<long> coeffs) {
  std::vector<FieldElement> cs;
  cs.reserve(coeffs.size());
  for (long c : coeffs) cs.push_back(field.from_int(c));
  return Poly1(field, std::move(cs));
}

Poly1 Poly1::monomial(const FieldElement& c, std::size_t power) {
  std::vector<FieldElement> cs(power + 1, c.zero_like());
  cs[power] = c;
  return Poly1(c.field(), std::move(cs));
}

Poly1 Poly1::linear_root(const FieldElement& a) {
  return Poly1(a.field(), {-a, a.one_like()});
}

void Poly1::strip() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElement Poly1::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : field_.zero();
}

const FieldElement& Poly1::lead() const {
  if (coeffs_.empty()) throw Error(Errc::ZeroPolynomial, "leading coefficient of zero polynomial");
  return coeffs_.back();
}

FieldElement Poly1::eval(const FieldElement& a) const {
  FieldElement acc = field_.zero();
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= a;
    acc += *it;
  }
  return acc;
}

Poly1 Poly1::scaled(const FieldElement& c) const {
  std::vector<FieldElement> cs = coeffs_;
  for (auto& x : cs) x *= c;
  return Poly1(field_, std::move(cs));
}

Poly1 Poly1::monic() const {
  if (is_zero()) return *this;
  return scaled(lead().inverse());
}

Poly1 Poly1::operator-() const { return scaled(-field_.one()); }

Poly1 operator+(const Poly1& a, const Poly1& b) {
  std::vector<FieldElement> cs(std::max(a.coeffs_.size(), b.coeffs_.size()), a.field_.zero());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) cs[i] += a.coeffs_[i];
  for (std::size_t i = 0; i < b.coeffs_.size(); ++i) cs[i] += b.coeffs_[i];
  return Poly1(a.field_, std::move(cs));
}

Poly1 operator-(const Poly1& a, const Poly1& b) { return a + (-b); }

Poly1 operator*(const Poly1& a, const Poly1& b) {
  if (a.is_zero() || b.is_zero()) return Poly1(a.field_);
  std::vector<FieldElement> cs(a.coeffs_.size() + b.coeffs_.size() - 1, a.field_.zero());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) cs[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Poly1(a.field_, std::move(cs));
}

std::string Poly1::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const auto& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    mpq_class v = c.lift();
    if (!first) os << (sgn(v) < 0 ? " - " : " + ");
    else if (sgn(v) < 0) os << "-";
    mpq_class mag = abs(v);
    if (k == 0 || mag != 1) {
      os << mag.get_str();
      if (k > 0) os << "*";
    }
    if (k > 0) os << var;
    if (k > 1) os << "^" << k;
    first = false;
  }
  return os.str();
}

std::pair<Poly1, Poly1> divmod(const Poly1& a, const Poly1& b) {
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  const Field& f = a.field();
  if (a.degree() < b.degree()) return {Poly1(f), a};
  std::vector<FieldElement> rem = a.coeffs();
  std::vector<FieldElement> quot(static_cast<std::size_t>(a.degree() - b.degree() + 1), f.zero());
  const FieldElement inv_lead = b.lead().inverse();
  const auto db = static_cast<std::size_t>(b.degree());
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k].is_zero()) continue;
    FieldElement factor = rem[k] * inv_lead;
    quot[k - db] = factor;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= factor * b.coeffs()[j];
  }
  rem.resize(db);
  return {Poly1(f, std::move(quot)), Poly1(f, std::move(rem))};
}

Poly1 gcd(const Poly1& a, const Poly1& b) {
  Poly1 x = a, y = b;
  while (!y.is_zero()) {
    Poly1 r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

// ---------------------------------------------------------------- RatFun1

RatFun1 RatFun1::normalize(Poly1 num, Poly1 den) {
  if (den.is_zero()) throw Error(Errc::ZeroDenominator, "rational function with zero denominator");
  if (num.field() != den.field()) throw Error(Errc::FieldMismatch, "numerator and denominator over different fields");
  if (num.is_zero()) return RatFun1(std::move(num), Poly1::constant(den.field().one()));
  Poly1 g = gcd(num, den);
  if (g.degree() > 0) {
    num = divmod(num, g).first;
    den = divmod(den, g).first;
  }
  const FieldElement inv = den.lead().inverse();
  return RatFun1(num.scaled(inv), den.scaled(inv));
}

std::optional<FieldElement> RatFun1::try_eval(const FieldElement& a) const {
  FieldElement d = den_.eval(a);
  if (d.is_zero()) return std::nullopt;
  return num_.eval(a) / d;
}

FieldElement RatFun1::eval(const FieldElement& a) const {
  auto v = try_eval(a);
  if (!v) throw Error(Errc::UndefinedAt, "denominator vanishes at " + a.to_string());
  return *v;
}

std::pair<Poly1, Poly1> RatFun1::with_unit_constant_term() const {
  const FieldElement c0 = den_.coeff(0);
  if (c0.is_zero()) throw Error(Errc::PoleAtOrigin, "denominator vanishes at 0");
  const FieldElement inv = c0.inverse();
  return {num_.scaled(inv), den_.scaled(inv)};
}

DegreeOrd degree_and_ord(const RatFun1& f) {
  if (f.is_zero()) throw Error(Errc::ZeroFunction, "degree of the zero function");
  const int dn = f.num().degree();
  const int dd = f.den().degree();
  return {std::max(dn, dd), dn - dd};
}

// ---------------------------------------------------------------- resultants

Sylvester sylvester_and_resultant(const Poly1& p, const Poly1& q) {
  if (p.is_zero() || q.is_zero()) throw Error(Errc::ZeroPolynomial, "resultant with zero polynomial");
  const auto n = static_cast<std::size_t>(p.degree());
  const auto m = static_cast<std::size_t>(q.degree());
  const std::size_t size = n + m;
  const Field& f = p.field();
  ExactMatrix s(size, size, f.zero());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k <= n; ++k) s(i, i + k) = p.coeffs()[n - k];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k <= m; ++k) s(m + i, i + k) = q.coeffs()[m - k];
  FieldElement res = det_bareiss(s);
  return {std::move(s), std::move(res)};
}

FieldElement resultant(const Poly1& p, const Poly1& q) { return sylvester_and_resultant(p, q).resultant; }

FieldElement vandermonde_product(const Field& field, std::span<const FieldElement> points) {
  FieldElement acc = field.one();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) acc *= points[j] - points[i];
  return acc;
}

}  // namespace ratrecon
