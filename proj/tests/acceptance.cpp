// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero if
// any criterion fails. An optional argument overrides the base seed.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <unordered_set>

#include "ratrecon/counterexample.hpp"
#include "ratrecon/detinterp.hpp"
#include "ratrecon/hankel.hpp"
#include "ratrecon/io.hpp"
#include "ratrecon/slicerecon.hpp"
#include "support.hpp"

using namespace ratrecon;
using namespace ratrecon::testing;

namespace {

const Field kQ = Field::rationals();
const Field kP = Field::prime(1000003);

struct Outcome {
  bool ok = true;
  std::string detail;
  // Everything the run computed, serialized; compared across repeated runs.
  std::ostringstream report;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

std::string text(const RatFun1& f) { return "(" + f.num().to_string() + ")/(" + f.den().to_string() + ")"; }

std::vector<FieldElement> distinct_points(const Field& f, Rng& rng, std::size_t count) {
  std::vector<FieldElement> out;
  std::unordered_set<FieldElement> seen;
  while (out.size() < count) {
    auto x = random_element(f, rng, 30);
    if (seen.insert(x).second) out.push_back(std::move(x));
  }
  return out;
}

void determinant_identity(Outcome& out, std::uint64_t seed) {
  Rng rng(seed);
  for (const Field& f : {kQ, kP}) {
    for (int accepted = 0; accepted < 200;) {
      const int n = static_cast<int>(rng.below(4)), m = static_cast<int>(rng.below(4));
      const Poly1 p = random_poly(f, rng, n), q = random_poly(f, rng, m);
      if (gcd(p, q).degree() > 0) continue;
      ++accepted;
      const auto pts = distinct_points(f, rng, static_cast<std::size_t>(n + m + 1));
      const auto a = random_element(f, rng, 30);
      const auto delta = delta_lemma44(p, q, a, pts);
      const auto expected = f.from_int(lemma44_sign(n, m)) * q.eval(a) * resultant(p, q) * vandermonde_product(f, pts);
      out.require(delta == expected, "identity fails for P = " + p.to_string() + ", Q = " + q.to_string());
      out.report << delta.to_string() << '\n';
    }
  }
}

void interpolation_formula(Outcome& out, std::uint64_t seed) {
  const auto cal = calibrate_sign();
  for (int n = 0; n <= 3; ++n)
    for (int m = 0; m <= 3; ++m) out.require(cal.sign(n, m) == interp_sign(n, m), "calibrated sign differs from the frozen sign");

  Rng rng(seed);
  for (int t = 0; t < 500; ++t) {
    const Field& f = t % 2 ? kP : kQ;
    const int n = static_cast<int>(rng.below(4)), m = static_cast<int>(rng.below(4));
    Poly1 p = random_poly(f, rng, n), q = random_poly(f, rng, m);
    if (gcd(p, q).degree() > 0) {
      --t;
      continue;
    }
    const RatFun1 fn = RatFun1::normalize(std::move(p), std::move(q));
    std::vector<Sample> samples;
    std::unordered_set<FieldElement> used;
    while (samples.size() < static_cast<std::size_t>(n + m + 1)) {
      auto x = random_element(f, rng, 40);
      if (fn.den().eval(x).is_zero() || !used.insert(x).second) continue;
      samples.push_back({x, fn.eval(x)});
    }
    FieldElement a = random_element(f, rng, 40);
    while (fn.den().eval(a).is_zero()) a = random_element(f, rng, 40);
    const SampleSet1 s(f, std::move(samples));
    const auto profile = DegreeProfile::of(fn);
    const auto [alpha, beta] = alpha_beta(s, profile, a);
    out.require(!beta.is_zero(), "beta vanished for " + text(fn));
    if (beta.is_zero()) continue;
    const auto value = f.from_int(interp_sign(n, m)) * alpha / beta;
    out.require(value == fn.eval(a), "formula disagrees for " + text(fn));
    out.report << value.to_string() << '\n';
  }
}

void series_certificates(Outcome& out, std::uint64_t seed) {
  SeriesPrefix fib{kQ, {kQ.one(), kQ.one()}};
  while (fib.coeffs.size() < 21) fib.coeffs.push_back(fib.coeffs[fib.coeffs.size() - 1] + fib.coeffs[fib.coeffs.size() - 2]);
  auto cert = certify_rationality(fib, 5, 5);
  out.require(cert.verdict == RationalityCertificate::Verdict::RationalWitness && cert.witness &&
                  cert.witness->with_unit_constant_term().second == Poly1::from_ints(kQ, {1, -1, -1}),
              "Fibonacci prefix not certified with denominator 1 - t - t^2");
  out.report << certificate_json(cert).dump() << '\n';

  SeriesPrefix squares{kQ, std::vector<FieldElement>(41, kQ.zero())};
  for (std::size_t i = 0; i * i <= 40; ++i) squares.coeffs[i * i] = kQ.one();
  cert = certify_rationality(squares, 4, 4);
  out.require(cert.verdict == RationalityCertificate::Verdict::NoWitnessUpTo && cert.l == 4 && cert.m == 4,
              "square-exponent prefix did not give NoWitnessUpTo(4, 4)");
  out.report << certificate_json(cert).dump() << '\n';

  Rng rng(seed);
  for (int t = 0; t < 50;) {
    const int dn = static_cast<int>(rng.below(4)), dd = static_cast<int>(rng.below(4));
    std::vector<FieldElement> num, den;
    for (int i = 0; i <= dn; ++i) num.push_back(random_element(kQ, rng, 9));
    for (int i = 0; i <= dd; ++i) den.push_back(random_element(kQ, rng, 9));
    if (den[0].is_zero()) continue;
    ++t;
    const RatFun1 fn = RatFun1::normalize(Poly1(kQ, num), Poly1(kQ, den));
    cert = certify_rationality(series_of_ratfun(fn, 20), 4, 4);
    out.require(cert.witness && *cert.witness == fn, "series roundtrip lost " + text(fn));
    out.report << certificate_json(cert).dump() << '\n';
  }
}

SliceOracle oracle_of(const RatFunN& f) {
  return {f.field(), f.nvars(), [f](std::span<const FieldElement> x) { return f.try_eval(x); }};
}

void roundtrip(Outcome& out, const RatFunN& fn, std::uint64_t seed, std::uint64_t height_bound = 10) {
  ReconConfig cfg;
  cfg.seed = seed;
  cfg.height_bound = height_bound;
  try {
    const auto r = reconstruct(oracle_of(fn), cfg);
    const auto& v = r.verification;
    out.require(equivalent(r.result, fn), "wrong result for " + fn.to_string() + ": " + r.result.to_string());
    out.require(v.trials > v.undefined_skips && v.agreements == v.trials - v.undefined_skips,
                "incomplete verification for " + fn.to_string());
    out.report << report_json(r).dump() << '\n';
  } catch (const Error& e) {
    out.require(false, fn.to_string() + ": " + e.what());
  }
}

void reconstruction_roundtrip(Outcome& out, std::uint64_t seed) {
  Rng gen(seed);
  for (int t = 0; t < 50; ++t) roundtrip(out, random_ratfunn(kP, gen, 2, 3), seed + static_cast<std::uint64_t>(t));
  for (int t = 0; t < 10; ++t) roundtrip(out, random_ratfunn(kP, gen, 3, 2), seed + 100 + static_cast<std::uint64_t>(t));
  for (int t = 0; t < 5; ++t) roundtrip(out, random_ratfunn(kQ, gen, 2, 3), seed + 200 + static_cast<std::uint64_t>(t), 10);
}

void cubic_example(Outcome& out, std::uint64_t seed) {
  const PolyN z = PolyN::variable(kQ, 2, 0), w = PolyN::variable(kQ, 2, 1);
  const RatFunN f = RatFunN::from_poly(z.pow(3) + z * w.pow(3));
  const auto o = oracle_of(f);
  for (long av = -5; av <= 5; ++av) {
    const FieldElement a = kQ.from_int(av);
    const auto along_z = slice(o, 0, {a}), along_w = slice(o, 1, {a});
    for (long tv = -5; tv <= 5; ++tv) {
      const FieldElement t = kQ.from_int(tv);
      out.require(*along_z.eval(t) == t.pow(3) + a.pow(3) * t, "slice with w fixed is not z^3 + a^3 z");
      out.require(*along_w.eval(t) == a * t.pow(3) + a.pow(3), "slice with z fixed is not a w^3 + a^3");
    }
  }
  ReconConfig cfg;
  cfg.seed = seed;
  const auto r = reconstruct(o, cfg);
  out.require(r.result == f && r.result.den().is_constant(), "reconstructed " + r.result.to_string());
  out.report << report_json(r).dump() << '\n';
}

void counterexample(Outcome& out, std::uint64_t) {
  constexpr std::size_t cap = 31;
  const auto table = counter_table(cap);
  for (std::uint64_t m = 1; m < cap; ++m) {
    const Poly1 s = slice_poly(m, cap);
    out.require(s.degree() == static_cast<int>(m), "slice " + std::to_string(m) + " has degree " + std::to_string(s.degree()));
    for (std::size_t n = 0; n < cap; ++n)
      out.require(s.eval(table.enumeration[n]) == table.values(n, m), "slice polynomial disagrees with the table");
    out.report << s.to_string() << '\n';
  }
  for (std::size_t n = 0; n < cap; ++n)
    for (std::size_t m = 0; m < n; ++m) out.require(table.values(n, m) == table.values(m, n), "table is not symmetric");
  out.report << sha256_hex(table_csv(table)) << '\n';

  const auto cert = nonrationality_report(5, 16);
  out.require(cert.degrees.size() == 6, "expected bounds D = 0..5");
  for (const auto& d : cert.degrees) out.require(d.refuted, "degree bound " + std::to_string(d.degree_bound) + " not refuted");
  out.report << nonrationality_json(cert).dump() << '\n';
}

struct Criterion {
  int id;
  const char* name;
  double target_s;
  std::function<void(Outcome&, std::uint64_t)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240601;
  const std::vector<Criterion> criteria{
      {1, "determinant identity on 200 coprime pairs per field", 10, determinant_identity},
      {2, "sign-calibrated interpolation formula on 500 instances", 10, interpolation_formula},
      {3, "Hankel certificates and 50 series roundtrips", 5, series_certificates},
      {4, "black-box reconstruction roundtrips (50 + 10 + 5)", 120, reconstruction_roundtrip},
      {5, "z^3 + z w^3 slices and reconstruction", 2, cubic_example},
      {6, "slice-polynomial counterexample", 30, counterexample},
  };

  bool all = true;
  std::vector<std::string> reports;
  for (const auto& c : criteria) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(out, seed);
    } catch (const std::exception& e) {
      out.require(false, std::string("unexpected error: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= c.target_s) out.require(false, "over the time target");
    all = all && out.ok;
    reports.push_back(out.report.str());
    std::printf("%s %d %s (%.2f s, target < %.0f s)%s%s\n", out.ok ? "PASS" : "FAIL", c.id, c.name, secs, c.target_s,
                out.ok ? "" : ": ", out.detail.c_str());
    std::fflush(stdout);
  }

  // Repeat every run with the same seed and compare the serialized reports.
  bool same = true;
  std::string differing;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out;
    try {
      criteria[i].run(out, seed);
    } catch (const std::exception&) {
    }
    if (out.report.str() != reports[i]) {
      same = false;
      differing += " " + std::to_string(criteria[i].id);
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s 7 byte-identical reports on repeated runs (%.2f s)%s%s\n", same ? "PASS" : "FAIL", secs,
              same ? "" : ": differs in", differing.c_str());
  all = all && same;
  return all ? 0 : 1;
}
