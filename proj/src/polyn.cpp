#include "ratrecon/polyn.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ratrecon {

namespace {

std::uint64_t total(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), std::uint64_t{0});
}

bool divides(const Monomial& d, const Monomial& m) {
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] > m[i]) return false;
  return true;
}

}  // namespace

bool GrLexLess::operator()(const Monomial& a, const Monomial& b) const {
  const auto ta = total(a), tb = total(b);
  if (ta != tb) return ta < tb;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// ---------------------------------------------------------------- PolyN

PolyN PolyN::constant(const FieldElement& c, std::size_t nvars) {
  PolyN p(c.field(), nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

PolyN PolyN::variable(Field field, std::size_t nvars, std::size_t index) {
  PolyN p(field, nvars);
  Monomial m(nvars, 0);
  m.at(index) = 1;
  p.add_term(m, field.one());
  return p;
}

PolyN PolyN::from_poly1(const Poly1& p, std::size_t nvars, std::size_t var) {
  PolyN out(p.field(), nvars);
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
    Monomial m(nvars, 0);
    m.at(var) = static_cast<std::uint32_t>(k);
    out.add_term(m, p.coeffs()[k]);
  }
  return out;
}

bool PolyN::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total(terms_.begin()->first) == 0);
}

int PolyN::total_degree() const {
  if (terms_.empty()) return kNegInfDegree;
  return static_cast<int>(total(terms_.rbegin()->first));
}

int PolyN::degree_in(std::size_t var) const {
  if (terms_.empty()) return kNegInfDegree;
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
  return static_cast<int>(d);
}

const Monomial& PolyN::leading_monomial() const {
  if (terms_.empty()) throw Error(Errc::ZeroPolynomial, "leading term of zero polynomial");
  return terms_.rbegin()->first;
}

const FieldElement& PolyN::leading_coeff() const {
  if (terms_.empty()) throw Error(Errc::ZeroPolynomial, "leading term of zero polynomial");
  return terms_.rbegin()->second;
}

void PolyN::add_term(const Monomial& m, const FieldElement& c) {
  if (m.size() != nvars_) throw Error(Errc::SizeMismatch, "monomial length differs from variable count");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

FieldElement PolyN::eval(std::span<const FieldElement> point) const {
  if (point.size() != nvars_) throw Error(Errc::SizeMismatch, "point arity differs from variable count");
  std::vector<std::vector<FieldElement>> powers(nvars_);
  for (std::size_t v = 0; v < nvars_; ++v) {
    const int d = degree_in(v);
    powers[v].push_back(field_.one());
    for (int k = 1; k <= d; ++k) powers[v].push_back(powers[v].back() * point[v]);
  }
  FieldElement acc = field_.zero();
  for (const auto& [m, c] : terms_) {
    FieldElement t = c;
    for (std::size_t v = 0; v < nvars_; ++v)
      if (m[v] != 0) t *= powers[v][m[v]];
    acc += t;
  }
  return acc;
}

PolyN PolyN::with_nvars(std::size_t nvars) const {
  if (nvars < nvars_) throw Error(Errc::SizeMismatch, "cannot drop variables");
  PolyN out(field_, nvars);
  for (const auto& [m, c] : terms_) {
    Monomial e = m;
    e.resize(nvars, 0);
    out.terms_.emplace(std::move(e), c);
  }
  return out;
}

PolyN PolyN::substitute(std::size_t var, const FieldElement& value) const {
  PolyN out(field_, nvars_);
  for (const auto& [m, c] : terms_) {
    Monomial e = m;
    const auto k = e[var];
    e[var] = 0;
    out.add_term(e, c * value.pow(k));
  }
  return out;
}

Poly1 PolyN::restrict_to(std::size_t var, std::span<const FieldElement> point) const {
  if (point.size() != nvars_) throw Error(Errc::SizeMismatch, "point arity differs from variable count");
  std::vector<FieldElement> coeffs(static_cast<std::size_t>(std::max(degree_in(var), 0)) + 1, field_.zero());
  for (const auto& [m, c] : terms_) {
    FieldElement t = c;
    for (std::size_t v = 0; v < nvars_; ++v)
      if (v != var && m[v] != 0) t *= point[v].pow(m[v]);
    coeffs[m[var]] += t;
  }
  return Poly1(field_, std::move(coeffs));
}

std::map<std::uint32_t, PolyN> PolyN::coefficients_in(std::size_t var) const {
  std::map<std::uint32_t, PolyN> out;
  for (const auto& [m, c] : terms_) {
    Monomial e = m;
    const auto k = e[var];
    e[var] = 0;
    out.try_emplace(k, field_, nvars_).first->second.terms_.emplace(std::move(e), c);
  }
  return out;
}

PolyN PolyN::scaled(const FieldElement& c) const {
  PolyN out(field_, nvars_);
  if (c.is_zero()) return out;
  for (const auto& [m, x] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, x * c);
  return out;
}

PolyN PolyN::pow(std::uint64_t e) const {
  PolyN result = one_like();
  PolyN base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

PolyN PolyN::monic() const {
  if (is_zero()) return *this;
  return scaled(leading_coeff().inverse());
}

PolyN PolyN::operator-() const { return scaled(-field_.one()); }

void PolyN::check_compatible(const PolyN& o) const {
  if (field_ != o.field_) throw Error(Errc::FieldMismatch, "polynomials over different fields");
  if (nvars_ != o.nvars_) throw Error(Errc::SizeMismatch, "polynomials in different numbers of variables");
}

PolyN operator+(const PolyN& a, const PolyN& b) {
  a.check_compatible(b);
  PolyN out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, c);
  return out;
}

PolyN operator-(const PolyN& a, const PolyN& b) {
  a.check_compatible(b);
  PolyN out = a;
  for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
  return out;
}

PolyN operator*(const PolyN& a, const PolyN& b) {
  a.check_compatible(b);
  PolyN out(a.field_, a.nvars_);
  if (a.is_zero() || b.is_zero()) return out;
  Monomial e(a.nvars_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t v = 0; v < a.nvars_; ++v) e[v] = ma[v] + mb[v];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

bool operator==(const PolyN& a, const PolyN& b) {
  return a.field_ == b.field_ && a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

std::string PolyN::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    mpq_class v = c.lift();
    if (!first) os << (sgn(v) < 0 ? " - " : " + ");
    else if (sgn(v) < 0) os << "-";
    const mpq_class mag = abs(v);
    const bool has_vars = total(m) > 0;
    bool need_star = false;
    if (!has_vars || mag != 1) {
      os << mag.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (need_star) os << "*";
      os << "x" << (i + 1);
      if (m[i] > 1) os << "^" << m[i];
      need_star = true;
    }
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------- division and gcd

std::optional<PolyN> divide_exact(const PolyN& a, const PolyN& b) {
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
  PolyN quot = a.zero_like();
  PolyN rem = a;
  const Monomial& lb = b.leading_monomial();
  const FieldElement inv_lc = b.leading_coeff().inverse();
  while (!rem.is_zero()) {
    const Monomial& lr = rem.leading_monomial();
    if (!divides(lb, lr)) return std::nullopt;
    Monomial e(lr.size());
    for (std::size_t v = 0; v < e.size(); ++v) e[v] = lr[v] - lb[v];
    PolyN t(a.field(), a.nvars());
    t.add_term(e, rem.leading_coeff() * inv_lc);
    quot = quot + t;
    rem = rem - t * b;
  }
  return quot;
}

namespace {

PolyN exact_quotient(const PolyN& a, const PolyN& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error(Errc::NoSolution, "internal: expected exact polynomial division");
  return *std::move(q);
}

int main_variable(const PolyN& a, const PolyN& b) {
  for (std::size_t v = a.nvars(); v-- > 0;) {
    if (a.degree_in(v) > 0 || b.degree_in(v) > 0) return static_cast<int>(v);
  }
  return -1;
}

PolyN coefficient_of(const PolyN& a, std::size_t var, std::uint32_t k) {
  PolyN out = a.zero_like();
  for (const auto& [m, c] : a.terms()) {
    if (m[var] != k) continue;
    Monomial e = m;
    e[var] = 0;
    out.add_term(e, c);
  }
  return out;
}

PolyN shifted(const PolyN& a, std::size_t var, std::uint32_t k) {
  PolyN out = a.zero_like();
  for (const auto& [m, c] : a.terms()) {
    Monomial e = m;
    e[var] += k;
    out.add_term(e, c);
  }
  return out;
}

// Sparse pseudo-remainder of a by b with respect to var.
PolyN pseudo_remainder(const PolyN& a, const PolyN& b, std::size_t var) {
  const int db = b.degree_in(var);
  const PolyN lcb = coefficient_of(b, var, static_cast<std::uint32_t>(db));
  PolyN r = a;
  while (!r.is_zero() && r.degree_in(var) >= db) {
    const int dr = r.degree_in(var);
    const PolyN lcr = coefficient_of(r, var, static_cast<std::uint32_t>(dr));
    r = lcb * r - shifted(lcr * b, var, static_cast<std::uint32_t>(dr - db));
  }
  return r;
}

PolyN primitive_part(const PolyN& a, std::size_t var) {
  if (a.is_zero()) return a;
  return exact_quotient(a, content_in(a, var));
}

}  // namespace

PolyN content_in(const PolyN& a, std::size_t var) {
  PolyN g = a.zero_like();
  for (const auto& [k, c] : a.coefficients_in(var)) {
    g = gcd(g, c);
    if (g.is_constant()) return a.one_like();
  }
  return g;
}

PolyN gcd(const PolyN& a, const PolyN& b) {
  if (a.field() != b.field() || a.nvars() != b.nvars())
    throw Error(Errc::FieldMismatch, "gcd of incompatible polynomials");
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return a.one_like();

  const int mv = main_variable(a, b);
  const auto v = static_cast<std::size_t>(mv);
  if (a.degree_in(v) == 0) return gcd(a, content_in(b, v));
  if (b.degree_in(v) == 0) return gcd(content_in(a, v), b);

  const PolyN ca = content_in(a, v);
  const PolyN cb = content_in(b, v);
  const PolyN c = gcd(ca, cb);
  PolyN pa = exact_quotient(a, ca);
  PolyN pb = exact_quotient(b, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);

  PolyN g = a.one_like();
  for (;;) {
    PolyN r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (r.degree_in(v) == 0) break;
    pa = std::move(pb);
    pb = primitive_part(r, v);
  }
  return (c * primitive_part(g, v)).monic();
}

// ---------------------------------------------------------------- RatFunN

namespace {

// Scale so the pair is canonical: Q -> integer coefficients, overall gcd 1,
// positive leading denominator coefficient; F_p -> leading denominator 1.
std::pair<PolyN, PolyN> canonical_scale(const PolyN& num, const PolyN& den) {
  if (!num.field().is_rational()) {
    const FieldElement inv = den.leading_coeff().inverse();
    return {num.scaled(inv), den.scaled(inv)};
  }
  mpz_class lcm_den = 1;
  for (const auto* p : {&num, &den})
    for (const auto& [m, c] : p->terms()) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.rational().get_den_mpz_t());
  mpz_class g = 0;
  for (const auto* p : {&num, &den}) {
    for (const auto& [m, c] : p->terms()) {
      mpz_class v = c.rational().get_num() * (lcm_den / c.rational().get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
  }
  mpq_class factor(lcm_den, g);
  factor.canonicalize();
  if (sgn(den.leading_coeff().rational()) < 0) factor = -factor;
  const FieldElement f(factor);
  return {num.scaled(f), den.scaled(f)};
}

}  // namespace

RatFunN RatFunN::normalize(PolyN num, PolyN den) {
  if (den.is_zero()) throw Error(Errc::ZeroDenominator, "rational function with zero denominator");
  if (num.field() != den.field() || num.nvars() != den.nvars())
    throw Error(Errc::FieldMismatch, "numerator and denominator in different rings");
  if (num.is_zero()) return RatFunN(std::move(num), den.one_like());
  const PolyN g = gcd(num, den);
  if (!g.is_constant()) {
    num = exact_quotient(num, g);
    den = exact_quotient(den, g);
  }
  auto [n, d] = canonical_scale(num, den);
  return RatFunN(std::move(n), std::move(d));
}

RatFunN RatFunN::from_poly(PolyN p) {
  PolyN one = p.one_like();
  return normalize(std::move(p), std::move(one));
}

RatFunN RatFunN::from_ratfun1(const RatFun1& f, std::size_t nvars, std::size_t var) {
  return normalize(PolyN::from_poly1(f.num(), nvars, var), PolyN::from_poly1(f.den(), nvars, var));
}

std::optional<FieldElement> RatFunN::try_eval(std::span<const FieldElement> point) const {
  FieldElement d = den_.eval(point);
  if (d.is_zero()) return std::nullopt;
  return num_.eval(point) / d;
}

FieldElement RatFunN::eval(std::span<const FieldElement> point) const {
  auto v = try_eval(point);
  if (!v) {
    std::string where;
    for (const auto& x : point) where += (where.empty() ? "" : ", ") + x.to_string();
    throw Error(Errc::UndefinedAt, "denominator vanishes at (" + where + ")");
  }
  return *v;
}

RatFun1 RatFunN::restrict_to(std::size_t var, std::span<const FieldElement> point) const {
  return RatFun1::normalize(num_.restrict_to(var, point), den_.restrict_to(var, point));
}

RatFunN RatFunN::with_nvars(std::size_t nvars) const {
  return RatFunN(num_.with_nvars(nvars), den_.with_nvars(nvars));
}

RatFunN operator+(const RatFunN& a, const RatFunN& b) {
  return RatFunN::normalize(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunN operator-(const RatFunN& a, const RatFunN& b) {
  return RatFunN::normalize(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RatFunN operator*(const RatFunN& a, const RatFunN& b) {
  return RatFunN::normalize(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunN operator/(const RatFunN& a, const RatFunN& b) {
  if (b.is_zero()) throw Error(Errc::ZeroDenominator, "division by the zero function");
  return RatFunN::normalize(a.num_ * b.den_, a.den_ * b.num_);
}

RatFunN RatFunN::operator-() const { return RatFunN(-num_, den_); }

RatFunN RatFunN::pow(std::uint64_t e) const {
  return RatFunN::normalize(num_.pow(e), den_.pow(e));
}

std::string RatFunN::to_string() const {
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

bool equivalent(const RatFunN& a, const RatFunN& b) {
  return a.num() * b.den() == b.num() * a.den();
}

}  // namespace ratrecon
