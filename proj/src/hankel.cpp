#include "ratrecon/hankel.hpp"

#include <algorithm>

namespace ratrecon {

SeriesPrefix SeriesPrefix::from_ints(Field field, std::initializer_list<long> values) {
  SeriesPrefix s{field, {}};
  for (long v : values) s.coeffs.push_back(field.from_int(v));
  return s;
}

ExactMatrix hankel_matrix(const SeriesPrefix& s, std::size_t n, std::size_t m) {
  if (s.coeffs.empty() || n + 2 * m > s.horizon())
    throw Error(Errc::PrefixTooShort, "Hankel matrix H(" + std::to_string(n) + ", " + std::to_string(m) +
                                          ") needs coefficients up to index " + std::to_string(n + 2 * m));
  ExactMatrix h(m + 1, m + 1, s.field.zero());
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t j = 0; j <= m; ++j) h(i, j) = s.coeffs[n + i + j];
  return h;
}

std::vector<KroneckerCandidate> kronecker_scan(const SeriesPrefix& s, std::size_t l_max, std::size_t m_max) {
  if (s.coeffs.empty() || s.horizon() < l_max + 2 * m_max)
    throw Error(Errc::PrefixTooShort, "Kronecker scan needs N >= l_max + 2 m_max");
  const std::size_t horizon = s.horizon();
  std::vector<KroneckerCandidate> out;
  for (std::size_t m = 0; m <= m_max; ++m) {
    const std::size_t last = horizon - 2 * m;
    // singular_from[n]: every H(n', m) with n <= n' <= last is singular
    std::vector<bool> singular_from(last + 2, true);
    for (std::size_t n = last + 1; n-- > 0;) {
      singular_from[n] = singular_from[n + 1] && det_bareiss(hankel_matrix(s, n, m)).is_zero();
    }
    for (std::size_t l = 0; l <= l_max; ++l)
      if (singular_from[l]) out.push_back({l, m});
  }
  return out;
}

RatFun1 pade_reconstruct(const SeriesPrefix& s, std::size_t n_deg, std::size_t m_deg) {
  if (s.coeffs.empty() || s.horizon() < n_deg + m_deg + 1)
    throw Error(Errc::PrefixTooShort, "Pade reconstruction needs N >= n + m + 1");
  const Field& f = s.field;
  const auto a = [&](std::ptrdiff_t k) { return k < 0 ? f.zero() : s.coeffs[static_cast<std::size_t>(k)]; };

  // Unknowns q_1..q_m; equations: coefficient k of Q*s vanishes for n < k <= n + m.
  std::vector<FieldElement> qc{f.one()};
  if (m_deg > 0) {
    ExactMatrix sys(m_deg, m_deg, f.zero());
    std::vector<FieldElement> rhs;
    for (std::size_t r = 0; r < m_deg; ++r) {
      const auto k = static_cast<std::ptrdiff_t>(n_deg + 1 + r);
      for (std::size_t j = 1; j <= m_deg; ++j) sys(r, j - 1) = a(k - static_cast<std::ptrdiff_t>(j));
      rhs.push_back(-a(k));
    }
    auto sol = solve_linear(sys, rhs);
    if (!sol) throw Error(Errc::NoSolution, "no denominator with Q(0) = 1 for degrees (" + std::to_string(n_deg) + ", " + std::to_string(m_deg) + ")");
    qc.insert(qc.end(), sol->begin(), sol->end());
  }
  std::vector<FieldElement> pc;
  for (std::size_t k = 0; k <= n_deg; ++k) {
    FieldElement acc = f.zero();
    for (std::size_t j = 0; j <= std::min(k, m_deg); ++j) acc += qc[j] * a(static_cast<std::ptrdiff_t>(k - j));
    pc.push_back(acc);
  }
  return RatFun1::normalize(Poly1(f, std::move(pc)), Poly1(f, std::move(qc)));
}

SeriesPrefix series_of_ratfun(const RatFun1& fn, std::size_t horizon) {
  const Field& f = fn.field();
  const FieldElement d0 = fn.den().coeff(0);
  if (d0.is_zero()) throw Error(Errc::PoleAtOrigin, "rational function has a pole at 0");
  const FieldElement inv = d0.inverse();
  const auto& den = fn.den().coeffs();
  SeriesPrefix s{f, {}};
  for (std::size_t k = 0; k <= horizon; ++k) {
    FieldElement acc = fn.num().coeff(k);
    for (std::size_t j = 1; j < den.size() && j <= k; ++j) acc -= den[j] * s.coeffs[k - j];
    s.coeffs.push_back(acc * inv);
  }
  return s;
}

RationalityCertificate certify_rationality(const SeriesPrefix& s, std::size_t l_max, std::size_t m_max) {
  const auto candidates = kronecker_scan(s, l_max, m_max);
  const std::size_t horizon = s.horizon();
  for (const auto& c : candidates) {
    for (std::size_t n_deg = c.l + c.m > 0 ? c.l + c.m - 1 : 0; n_deg <= l_max + m_max; ++n_deg) {
      if (n_deg + c.m + 1 > horizon) break;
      try {
        RatFun1 w = pade_reconstruct(s, n_deg, c.m);
        if (series_of_ratfun(w, horizon).coeffs == s.coeffs)
          return {RationalityCertificate::Verdict::RationalWitness, c.l, c.m, std::move(w), horizon + 1};
      } catch (const Error& e) {
        if (e.code() != Errc::NoSolution) throw;
      }
    }
  }
  return {RationalityCertificate::Verdict::NoWitnessUpTo, l_max, m_max, std::nullopt, horizon + 1};
}

}  // namespace ratrecon
