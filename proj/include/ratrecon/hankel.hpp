#pragma once

#include <optional>
#include <vector>

#include "ratrecon/matrix.hpp"
#include "ratrecon/poly1.hpp"

namespace ratrecon {

/// Coefficients a_0..a_N of a formal power series.
struct SeriesPrefix {
  Field field;
  std::vector<FieldElement> coeffs;

  std::size_t horizon() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  static SeriesPrefix from_ints(Field field, std::initializer_list<long> values);
};

/// (m+1)x(m+1) matrix with entry (i, j) = a_{n+i+j}. Throws PrefixTooShort
/// unless n + 2m <= N.
ExactMatrix hankel_matrix(const SeriesPrefix& s, std::size_t n, std::size_t m);

struct KroneckerCandidate {
  std::size_t l;
  std::size_t m;
  friend bool operator==(const KroneckerCandidate&, const KroneckerCandidate&) = default;
};

/// All (l, m) with l <= l_max, m <= m_max such that every H(n, m) with
/// l <= n <= N - 2m is singular, ordered by m then l.
/// Throws PrefixTooShort unless N >= l_max + 2 m_max.
std::vector<KroneckerCandidate> kronecker_scan(const SeriesPrefix& s, std::size_t l_max, std::size_t m_max);

/// Pade-type witness: Q with Q(0) = 1, deg Q <= m_deg, and P with
/// deg P <= n_deg such that Q s = P mod t^(n_deg+m_deg+1). Throws NoSolution
/// or PrefixTooShort.
RatFun1 pade_reconstruct(const SeriesPrefix& s, std::size_t n_deg, std::size_t m_deg);

/// First N+1 Taylor coefficients at 0. Throws PoleAtOrigin.
SeriesPrefix series_of_ratfun(const RatFun1& f, std::size_t horizon);

struct RationalityCertificate {
  enum class Verdict { RationalWitness, NoWitnessUpTo };
  Verdict verdict;
  /// Kronecker candidate that produced the witness, or the scan bounds for NoWitnessUpTo.
  std::size_t l;
  std::size_t m;
  std::optional<RatFun1> witness;
  std::size_t checked_prefix_length;
};

/// Runs the Kronecker scan and tries a Pade witness for each candidate;
/// a witness is accepted only if its re-expansion matches the whole prefix.
RationalityCertificate certify_rationality(const SeriesPrefix& s, std::size_t l_max, std::size_t m_max);

}  // namespace ratrecon
