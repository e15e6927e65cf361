#include "ratrecon/expr.hpp"

#include <cctype>
#include <limits>

namespace ratrecon {

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + ("'" + s + "'");
  return out;
}

const std::vector<std::string> kOperand{"integer", "variable", "(", "-"};

class Parser {
public:
  Parser(std::string_view src, std::size_t arity) : src_(src), arity_(arity) {}

  ExprPtr run() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail({"+", "-", "*", "/", "^", "end of input"});
    return e;
  }

private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) {
    const std::string found = pos_ < src_.size() ? "'" + std::string(1, src_[pos_]) + "'" : "end of input";
    throw ParseFailure(Errc::SyntaxError, pos_, expected,
                       "at offset " + std::to_string(pos_) + ": found " + found + ", expected one of " + join(expected));
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = Expr::binary(Expr::Kind::Add, lhs, term());
      else if (accept('-')) lhs = Expr::binary(Expr::Kind::Sub, lhs, term());
      else return lhs;
    }
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = Expr::binary(Expr::Kind::Mul, lhs, unary());
      else if (accept('/')) lhs = Expr::binary(Expr::Kind::Div, lhs, unary());
      else return lhs;
    }
  }

  ExprPtr unary() {
    if (accept('-')) return Expr::neg(unary());
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (!accept('^')) return base;
    return Expr::pow(base, exponent());
  }

  std::uint64_t exponent() {
    skip_ws();
    const std::size_t start = pos_;
    if (accept('-')) {
      skip_ws();
      throw ParseFailure(Errc::NegativeExponent, start, {"integer"},
                         "at offset " + std::to_string(start) + ": exponents must be nonnegative integer literals");
    }
    skip_ws();
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) fail({"integer"});
    mpz_class e = integer();
    if (accept('^')) {
      const std::uint64_t outer = exponent();
      mpz_pow_ui(e.get_mpz_t(), e.get_mpz_t(), outer);
    }
    if (e > std::numeric_limits<std::uint32_t>::max())
      throw ParseFailure(Errc::SyntaxError, start, {"integer"}, "at offset " + std::to_string(start) + ": exponent too large");
    return e.get_ui();
  }

  mpz_class integer() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return mpz_class(std::string(src_.substr(start, pos_ - start)));
  }

  ExprPtr primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail(kOperand);
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return Expr::literal(integer());
    if (c == '(') {
      ++pos_;
      ExprPtr inner = expr();
      if (!accept(')')) fail({"+", "-", "*", "/", "^", ")"});
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      const std::string name(src_.substr(start, pos_ - start));
      std::size_t index = 0;
      bool ok = name.size() >= 2 && name[0] == 'x' && name[1] != '0' && name.size() <= 12;
      for (std::size_t i = 1; ok && i < name.size(); ++i) ok = std::isdigit(static_cast<unsigned char>(name[i])) != 0;
      if (ok) index = std::stoull(name.substr(1));
      if (!ok || index > arity_)
        throw ParseFailure(Errc::UnknownVariable, start, {"x1..x" + std::to_string(arity_)},
                           "at offset " + std::to_string(start) + ": unknown variable '" + name + "' (arity " + std::to_string(arity_) + ")");
      return Expr::variable(index - 1);
    }
    fail(kOperand);
  }

  std::string_view src_;
  std::size_t arity_;
  std::size_t pos_ = 0;
};

// Binding strength used by the printer.
int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

void print(const Expr& e, std::string& out);

void print_at_least(const Expr& e, int prec, std::string& out) {
  if (precedence(e) < prec) {
    out += '(';
    print(e, out);
    out += ')';
  } else {
    print(e, out);
  }
}

void print(const Expr& e, std::string& out) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::IntLiteral: out += e.value.get_str(); return;
    case K::Var: out += "x" + std::to_string(e.var + 1); return;
    case K::Neg:
      out += '-';
      print_at_least(*e.lhs, 3, out);
      return;
    case K::Pow:
      print_at_least(*e.lhs, 5, out);
      out += "^" + std::to_string(e.exponent);
      return;
    default: break;
  }
  const int p = precedence(e);
  print_at_least(*e.lhs, p, out);
  out += e.kind == K::Add ? " + " : e.kind == K::Sub ? " - " : e.kind == K::Mul ? "*" : "/";
  print_at_least(*e.rhs, p + 1, out);
}

std::optional<FieldElement> eval(const Expr& e, const Field& f, std::span<const FieldElement> pt) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::IntLiteral: return f.from_integer(e.value);
    case K::Var: return pt[e.var];
    case K::Neg: {
      auto v = eval(*e.lhs, f, pt);
      if (!v) return std::nullopt;
      return -*v;
    }
    case K::Pow: {
      auto v = eval(*e.lhs, f, pt);
      if (!v) return std::nullopt;
      return v->pow(e.exponent);
    }
    default: break;
  }
  auto a = eval(*e.lhs, f, pt);
  if (!a) return std::nullopt;
  auto b = eval(*e.rhs, f, pt);
  if (!b) return std::nullopt;
  switch (e.kind) {
    case K::Add: return *a + *b;
    case K::Sub: return *a - *b;
    case K::Mul: return *a * *b;
    default:
      if (b->is_zero()) return std::nullopt;
      return *a / *b;
  }
}

}  // namespace

ParseFailure::ParseFailure(Errc code, std::size_t offset, std::vector<std::string> expected, const std::string& what)
    : Error(code, what), offset_(offset), expected_(std::move(expected)) {}

ExprPtr Expr::literal(mpz_class v) {
  if (v < 0) throw Error(Errc::SizeMismatch, "integer literals are nonnegative; use Neg");
  auto e = std::make_shared<Expr>();
  e->kind = Kind::IntLiteral;
  e->value = std::move(v);
  return e;
}

ExprPtr Expr::variable(std::size_t index) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Var;
  e->var = index;
  return e;
}

ExprPtr Expr::binary(Kind kind, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

ExprPtr Expr::neg(ExprPtr operand) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Neg;
  e->lhs = std::move(operand);
  return e;
}

ExprPtr Expr::pow(ExprPtr base, std::uint64_t exponent) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Pow;
  e->lhs = std::move(base);
  e->exponent = exponent;
  return e;
}

std::string_view kind_name(Expr::Kind kind) noexcept {
  switch (kind) {
    case Expr::Kind::IntLiteral: return "IntLiteral";
    case Expr::Kind::Var: return "Var";
    case Expr::Kind::Add: return "Add";
    case Expr::Kind::Sub: return "Sub";
    case Expr::Kind::Mul: return "Mul";
    case Expr::Kind::Div: return "Div";
    case Expr::Kind::Neg: return "Neg";
    case Expr::Kind::Pow: return "Pow";
  }
  return "?";
}

bool same_tree(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Expr::Kind::IntLiteral: return a.value == b.value;
    case Expr::Kind::Var: return a.var == b.var;
    case Expr::Kind::Neg: return same_tree(*a.lhs, *b.lhs);
    case Expr::Kind::Pow: return a.exponent == b.exponent && same_tree(*a.lhs, *b.lhs);
    default: return same_tree(*a.lhs, *b.lhs) && same_tree(*a.rhs, *b.rhs);
  }
}

ExprPtr parse_expr(std::string_view src, std::size_t arity) { return Parser(src, arity).run(); }

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

std::optional<FieldElement> eval_expr(const Expr& e, const Field& field, std::span<const FieldElement> point) {
  return eval(e, field, point);
}

RatFunN expand(const Expr& e, const Field& field, std::size_t nvars) {
  using K = Expr::Kind;
  switch (e.kind) {
    case K::IntLiteral: return RatFunN::from_poly(PolyN::constant(field.from_integer(e.value), nvars));
    case K::Var:
      if (e.var >= nvars) throw Error(Errc::UnknownVariable, "x" + std::to_string(e.var + 1) + " outside " + std::to_string(nvars) + " variables");
      return RatFunN::from_poly(PolyN::variable(field, nvars, e.var));
    case K::Neg: return -expand(*e.lhs, field, nvars);
    case K::Pow: return expand(*e.lhs, field, nvars).pow(e.exponent);
    case K::Add: return expand(*e.lhs, field, nvars) + expand(*e.rhs, field, nvars);
    case K::Sub: return expand(*e.lhs, field, nvars) - expand(*e.rhs, field, nvars);
    case K::Mul: return expand(*e.lhs, field, nvars) * expand(*e.rhs, field, nvars);
    case K::Div: return expand(*e.lhs, field, nvars) / expand(*e.rhs, field, nvars);
  }
  throw Error(Errc::ParseError, "unreachable expression kind");
}

}  // namespace ratrecon
