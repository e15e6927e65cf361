#pragma once

#include <algorithm>
#include <numeric>

#include "ratrecon/matrix.hpp"
#include "ratrecon/poly1.hpp"
#include "ratrecon/polyn.hpp"
#include "ratrecon/rng.hpp"

namespace ratrecon::testing {

// Leibniz expansion over all permutations; test-only oracle.
inline FieldElement det_leibniz(const ExactMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  FieldElement total = m.zero();
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    FieldElement t = m.zero().one_like();
    for (std::size_t i = 0; i < n; ++i) t *= m(i, perm[i]);
    total += inversions % 2 ? -t : t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Exactly `degree`, coefficients of height <= 9.
inline Poly1 random_poly(const Field& f, Rng& rng, int degree) {
  std::vector<FieldElement> cs;
  for (int i = 0; i < degree; ++i) cs.push_back(random_element(f, rng, 9));
  cs.push_back(random_nonzero(f, rng, 9));
  return Poly1(f, std::move(cs));
}

// Random polynomial with total degree <= max_deg; each monomial present with probability 1/2.
inline PolyN random_dense_polyn(const Field& f, Rng& rng, std::size_t nvars, int max_deg, std::uint64_t height = 9) {
  PolyN p(f, nvars);
  Monomial m(nvars, 0);
  // walk all exponent vectors with total degree <= max_deg
  auto visit = [&](auto&& self, std::size_t var, int left) -> void {
    if (var == nvars) {
      if (rng.below(2)) p.add_term(m, random_nonzero(f, rng, height));
      return;
    }
    for (int e = 0; e <= left; ++e) {
      m[var] = static_cast<std::uint32_t>(e);
      self(self, var + 1, left - e);
    }
    m[var] = 0;
  };
  visit(visit, 0, max_deg);
  return p;
}

inline RatFunN random_ratfunn(const Field& f, Rng& rng, std::size_t nvars, int max_deg) {
  for (;;) {
    PolyN den = random_dense_polyn(f, rng, nvars, max_deg);
    if (den.is_zero()) continue;
    return RatFunN::normalize(random_dense_polyn(f, rng, nvars, max_deg), std::move(den));
  }
}

}  // namespace ratrecon::testing
