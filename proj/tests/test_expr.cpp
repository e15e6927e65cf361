#include "doctest.h"
#include "ratrecon/expr.hpp"
#include "ratrecon/rng.hpp"

using namespace ratrecon;

namespace {

const Field kQ = Field::rationals();
const Field kP = Field::prime(1000003);
using K = Expr::Kind;

ExprPtr lit(long v) { return Expr::literal(mpz_class(v)); }
ExprPtr x(std::size_t i) { return Expr::variable(i - 1); }
ExprPtr bin(K k, ExprPtr a, ExprPtr b) { return Expr::binary(k, std::move(a), std::move(b)); }

std::vector<FieldElement> pt(std::initializer_list<long> vs) {
  std::vector<FieldElement> out;
  for (long v : vs) out.push_back(kQ.from_int(v));
  return out;
}

ExprPtr random_tree(Rng& rng, std::size_t arity, int depth) {
  const auto pick = depth <= 0 ? rng.below(2) : rng.below(8);
  switch (pick) {
    case 0: return Expr::literal(mpz_class(static_cast<unsigned long>(rng.below(20))));
    case 1: return Expr::variable(rng.below(arity));
    case 2: return bin(K::Add, random_tree(rng, arity, depth - 1), random_tree(rng, arity, depth - 1));
    case 3: return bin(K::Sub, random_tree(rng, arity, depth - 1), random_tree(rng, arity, depth - 1));
    case 4: return bin(K::Mul, random_tree(rng, arity, depth - 1), random_tree(rng, arity, depth - 1));
    case 5: return bin(K::Div, random_tree(rng, arity, depth - 1), random_tree(rng, arity, depth - 1));
    case 6: return Expr::neg(random_tree(rng, arity, depth - 1));
    default: return Expr::pow(random_tree(rng, arity, depth - 1), rng.below(4));
  }
}

// Random division-free tree.
ExprPtr random_polynomial_tree(Rng& rng, std::size_t arity, int depth) {
  for (;;) {
    ExprPtr e = random_tree(rng, arity, depth);
    std::vector<const Expr*> stack{e.get()};
    bool has_div = false;
    while (!stack.empty()) {
      const Expr* n = stack.back();
      stack.pop_back();
      has_div = has_div || n->kind == K::Div;
      if (n->lhs) stack.push_back(n->lhs.get());
      if (n->rhs) stack.push_back(n->rhs.get());
    }
    if (!has_div) return e;
  }
}

template <class F>
ParseFailure failure(F&& fn) {
  try {
    fn();
  } catch (const ParseFailure& e) {
    return e;
  }
  FAIL("expected a parse failure");
  return ParseFailure(Errc::SyntaxError, 0, {}, "");
}

}  // namespace

TEST_CASE("parse builds the expected trees") {
  const auto e = parse_expr("(x1*x2 + 1)/(x1 - x2)", 2);
  CHECK(same_tree(*e, *bin(K::Div, bin(K::Add, bin(K::Mul, x(1), x(2)), lit(1)), bin(K::Sub, x(1), x(2)))));

  const auto cubic = parse_expr("x1^3 + x1*x2^3", 2);
  CHECK(same_tree(*cubic, *bin(K::Add, Expr::pow(x(1), 3), bin(K::Mul, x(1), Expr::pow(x(2), 3)))));

  // precedence: ^ over unary minus over * / over + -
  CHECK(same_tree(*parse_expr("-x1^2", 1), *Expr::neg(Expr::pow(x(1), 2))));
  CHECK(same_tree(*parse_expr("-x1*2", 1), *bin(K::Mul, Expr::neg(x(1)), lit(2))));
  CHECK(same_tree(*parse_expr("1 - 2 - 3", 1), *bin(K::Sub, bin(K::Sub, lit(1), lit(2)), lit(3))));
  CHECK(same_tree(*parse_expr("8/4/2", 1), *bin(K::Div, bin(K::Div, lit(8), lit(4)), lit(2))));
  // right associative, folded: 2^3^2 = 2^9
  CHECK(same_tree(*parse_expr("2^3^2", 1), *Expr::pow(lit(2), 9)));
  CHECK(same_tree(*parse_expr("  x1\t+\n1 ", 1), *bin(K::Add, x(1), lit(1))));
  CHECK(same_tree(*parse_expr("123456789012345678901234567890", 1), *Expr::literal(mpz_class("123456789012345678901234567890"))));
}

TEST_CASE("parse errors carry offsets and expectations") {
  auto f = failure([] { (void)parse_expr("x3", 2); });
  CHECK(f.code() == Errc::UnknownVariable);
  CHECK(f.offset() == 0);
  CHECK(failure([] { (void)parse_expr("1 + y", 2); }).code() == Errc::UnknownVariable);
  CHECK(failure([] { (void)parse_expr("x0", 2); }).code() == Errc::UnknownVariable);

  f = failure([] { (void)parse_expr("x1^-2", 1); });
  CHECK(f.code() == Errc::NegativeExponent);
  CHECK(f.offset() == 3);

  f = failure([] { (void)parse_expr("(x1 + 1", 1); });
  CHECK(f.code() == Errc::SyntaxError);
  CHECK(f.offset() == 7);
  CHECK(std::find(f.expected().begin(), f.expected().end(), ")") != f.expected().end());

  f = failure([] { (void)parse_expr("x1 + * 2", 1); });
  CHECK(f.code() == Errc::SyntaxError);
  CHECK(f.offset() == 5);
  CHECK(f.expected() == std::vector<std::string>{"integer", "variable", "(", "-"});

  f = failure([] { (void)parse_expr("2 x1", 1); });
  CHECK(f.offset() == 2);
  CHECK(std::find(f.expected().begin(), f.expected().end(), "end of input") != f.expected().end());

  CHECK(failure([] { (void)parse_expr("", 1); }).offset() == 0);
  CHECK(failure([] { (void)parse_expr("x1^x2", 2); }).code() == Errc::SyntaxError);
}

TEST_CASE("printing") {
  CHECK(to_string(*parse_expr("(x1*x2 + 1)/(x1 - x2)", 2)) == "(x1*x2 + 1)/(x1 - x2)");
  CHECK(to_string(*parse_expr("((x1))^2", 1)) == "x1^2");
  CHECK(to_string(*bin(K::Sub, x(1), bin(K::Sub, x(1), lit(1)))) == "x1 - (x1 - 1)");
  CHECK(to_string(*Expr::pow(Expr::neg(x(1)), 2)) == "(-x1)^2");
  CHECK(to_string(*Expr::pow(Expr::pow(x(1), 2), 3)) == "(x1^2)^3");
  CHECK(to_string(*bin(K::Sub, x(1), Expr::neg(x(1)))) == "x1 - -x1");
}

TEST_CASE("evaluation") {
  const auto h = parse_expr("(x1*x2+1)/(x1-x2)", 2);
  CHECK_FALSE(eval_expr(*h, kQ, pt({2, 2})).has_value());
  CHECK(*eval_expr(*h, kQ, pt({2, 1})) == kQ.from_int(3));
  CHECK(*eval_expr(*parse_expr("x1^3 + x1*x2^3", 2), kQ, pt({1, 2})) == kQ.from_int(9));
  CHECK_FALSE(eval_expr(*parse_expr("1/(1/(x1))", 1), kQ, pt({0})).has_value());
  CHECK(*eval_expr(*parse_expr("x1^0", 1), kQ, pt({0})) == kQ.one());
}

TEST_CASE("print then parse is a fixed point") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const auto e = random_tree(rng, 3, 4);
    const std::string text = to_string(*e);
    const auto back = parse_expr(text, 3);
    INFO(text);
    REQUIRE(same_tree(*e, *back));
    CHECK(to_string(*back) == text);
  }
}

TEST_CASE("evaluation agrees with the expanded rational function") {
  Rng rng(4);
  for (const Field& f : {kQ, kP}) {
    for (int t = 0; t < 40; ++t) {
      const bool division_free = t % 2 == 0;
      const auto e = division_free ? random_polynomial_tree(rng, 2, 4) : random_tree(rng, 2, 4);
      RatFunN r = RatFunN::from_poly(PolyN(f, 2));
      try {
        r = expand(*e, f, 2);
      } catch (const Error& err) {
        REQUIRE(err.code() == Errc::ZeroDenominator);
        continue;
      }
      for (int k = 0; k < 100; ++k) {
        const std::vector<FieldElement> p{random_element(f, rng, 30), random_element(f, rng, 30)};
        const auto direct = eval_expr(*e, f, p);
        if (division_free) REQUIRE(direct.has_value());
        if (!direct) continue;
        // where the tree is defined, the reduced function is too
        const auto via = r.try_eval(p);
        REQUIRE(via.has_value());
        CHECK(*via == *direct);
      }
    }
  }
}

TEST_CASE("expand") {
  CHECK(expand(*parse_expr("(x1*x2 + 1)/(x1 - x2)", 2), kQ, 2).to_string() == "(x1*x2 + 1)/(x1 - x2)");
  CHECK(expand(*parse_expr("x1/x1", 1), kQ, 1).to_string() == "(1)/(1)");
  CHECK_THROWS_AS(expand(*parse_expr("1/(x1 - x1)", 1), kQ, 1), Error);
}
