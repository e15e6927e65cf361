#include "doctest.h"
#include "ratrecon/io.hpp"
#include "support.hpp"

using namespace ratrecon;
using namespace ratrecon::testing;

namespace {

const Field kQ = Field::rationals();
const Field kP = Field::prime(1000003);

template <class F>
Error error_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  FAIL("expected an error");
  return Error(Errc::ParseError, "");
}

SliceOracle oracle_of(const RatFunN& f) {
  return {f.field(), f.nvars(), [f](std::span<const FieldElement> x) { return f.try_eval(x); }};
}

}  // namespace

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("series JSON") {
  auto s = parse_series_json(R"({"field": "q", "coeffs": [1, "1/2", -3]})");
  CHECK(s.field == kQ);
  CHECK(s.coeffs == std::vector<FieldElement>{kQ.one(), FieldElement(mpq_class(1, 2)), kQ.from_int(-3)});
  s = parse_series_json(R"({"coeffs": ["1", "2"]})", kP);
  CHECK(s.field == kP);
  CHECK(series_json(s).dump() == R"({"field":"fp:1000003","coeffs":["1","2"]})");

  const auto e = error_of([] { (void)parse_series_json("{\"coeffs\": [1, 2,"); });
  CHECK(e.code() == Errc::ParseError);
  CHECK(std::string(e.what()).find("byte") != std::string::npos);
  CHECK(error_of([] { (void)parse_series_json(R"({"coeffs": [1, true]})"); }).code() == Errc::ParseError);
  CHECK(error_of([] { (void)parse_series_json(R"({"field": "fp:4", "coeffs": [1]})"); }).code() == Errc::InvalidField);
}

TEST_CASE("sample files") {
  const auto s = parse_samples_csv("a,f\n# comment\n1, 1\n\n2,1/2\n", kQ);
  REQUIRE(s.size() == 2);
  CHECK(s[1].f == FieldElement(mpq_class(1, 2)));
  const auto bad = error_of([] { (void)parse_samples_csv("1,1\n2\n", kQ); });
  CHECK(bad.code() == Errc::ParseError);
  CHECK(std::string(bad.what()).find("line 2") != std::string::npos);
  CHECK(error_of([] { (void)parse_samples_csv("1,1\n1,2\n", kQ); }).code() == Errc::DegenerateInput);

  const auto j = parse_samples_json(R"({"samples": [{"a": "1", "f": 1}, {"a": 2, "f": "1/2"}]})", kQ);
  CHECK(j.size() == 2);
  CHECK(j[1].a == kQ.from_int(2));
}

TEST_CASE("canonical text parses back to the same function") {
  Rng rng(17);
  for (const Field& f : {kQ, kP}) {
    for (int t = 0; t < 50; ++t) {
      const RatFunN r = random_ratfunn(f, rng, 3, 2);
      CHECK(parse_ratfun(r.to_string(), f, 3) == r);
    }
  }
}

TEST_CASE("expression JSON") {
  const auto e = parse_expr("-x2^2 + 3", 2);
  CHECK(expr_json(*e).dump() ==
        R"({"node":"Add","lhs":{"node":"Neg","operand":{"node":"Pow","base":{"node":"Var","index":1,"name":"x2"},"exponent":2}},"rhs":{"node":"IntLiteral","value":"3"}})");
}

TEST_CASE("reports serialize identically for equal seeds") {
  Rng rng(5);
  const RatFunN f = random_ratfunn(kP, rng, 2, 2);
  ReconConfig cfg;
  cfg.seed = 1234;
  const auto a = report_json(reconstruct(oracle_of(f), cfg)).dump();
  const auto b = report_json(reconstruct(oracle_of(f), cfg)).dump();
  CHECK(a == b);
  CHECK(a.find("elapsed_ms") == std::string::npos);
  CHECK(report_json(reconstruct(oracle_of(f), cfg), true).dump().find("elapsed_ms") != std::string::npos);
  cfg.seed = 1235;
  CHECK(report_json(reconstruct(oracle_of(f), cfg)).dump() != a);
}

TEST_CASE("oracle tables") {
  OracleTable t{kQ, 2, {}};
  t.entries[{"1", "2"}] = kQ.from_int(3);
  t.entries[{"1/2", "0"}] = std::nullopt;
  const std::string csv = oracle_table_csv(t);
  CHECK(csv == "x1,x2,f\n1,2,3\n1/2,0,undefined\n");
  const auto back = parse_oracle_table(csv, kQ);
  CHECK(back.arity == 2);
  CHECK(back.entries == t.entries);
  CHECK(error_of([] { (void)parse_oracle_table("a,b\n", kQ); }).code() == Errc::ParseError);
  CHECK(error_of([] { (void)parse_oracle_table("x1,f\n1,2,3\n", kQ); }).code() == Errc::ParseError);
}

TEST_CASE("nonrationality certificate header") {
  const auto j = nonrationality_json(nonrationality_report(1, 4));
  CHECK(j["field"] == "q");
  CHECK(j["note"].get<std::string>().find("not algebraically closed") != std::string::npos);
  CHECK(j["degrees"].size() == 2);
}
