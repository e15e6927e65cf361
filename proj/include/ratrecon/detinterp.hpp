#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ratrecon/matrix.hpp"
#include "ratrecon/poly1.hpp"
#include "ratrecon/rng.hpp"

namespace ratrecon {

struct Sample {
  FieldElement a;
  FieldElement f;
};

/// Samples (a_i, f(a_i)) with pairwise distinct abscissae.
class SampleSet1 {
public:
  /// Throws DegenerateInput on a repeated abscissa.
  SampleSet1(Field field, std::vector<Sample> points);

  const Field& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return points_.size(); }
  std::span<const Sample> points() const noexcept { return points_; }
  const Sample& operator[](std::size_t i) const { return points_[i]; }
  /// The first k samples.
  SampleSet1 prefix(std::size_t k) const;

private:
  Field field_;
  std::vector<Sample> points_;
};

/// Degree data of a univariate rational function: mapping degree d, order at
/// infinity e, and the derived block sizes n = d + min(0, e),
/// m = d - max(0, e), l = n + m. The zero function is given the profile of a
/// constant, which the interpolation formula reproduces.
struct DegreeProfile {
  int d = 0;
  int e = 0;
  int n = 0;
  int m = 0;
  int l = 0;

  /// Throws SizeMismatch when n or m would be negative.
  static DegreeProfile from_degree_ord(int d, int e);
  static DegreeProfile of(const RatFun1& f);
  /// The profile with the given block sizes: d = max(n, m), e = n - m.
  static DegreeProfile from_block_sizes(int n, int m) { return from_degree_ord(std::max(n, m), n - m); }

  friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
};

/// The (l+2)x(l+2) matrix with first row [1, a, ..., a^m, 0 x (n+1)] and rows
/// [P(a_i) a_i^0..a_i^m, Q(a_i) a_i^0..a_i^n], where n = deg P, m = deg Q.
ExactMatrix lemma44_matrix(const Poly1& p, const Poly1& q, const FieldElement& a, std::span<const FieldElement> points);

/// Determinant of lemma44_matrix; equals sign * Q(a) * res(P, Q) * Vandermonde
/// with the sign given by lemma44_sign. Throws DegenerateInput on repeated
/// points and SizeMismatch unless there are deg P + deg Q + 1 points.
FieldElement delta_lemma44(const Poly1& p, const Poly1& q, const FieldElement& a, std::span<const FieldElement> points);

/// Sign relating delta_lemma44 to Q(a) res(P, Q) prod(a_j - a_i) under our
/// Sylvester layout: (-1)^(m (n + 1)).
constexpr int lemma44_sign(int n, int m) { return (m * (n + 1)) % 2 ? -1 : 1; }

/// Sign of the interpolation formula f(a) = sign * alpha / beta:
/// (-1)^(n + m + nm). Frozen from calibrate_sign().
constexpr int interp_sign(int n, int m) { return (n + m + n * m) % 2 ? -1 : 1; }

ExactMatrix alpha_matrix(const SampleSet1& samples, const DegreeProfile& profile, const FieldElement& a);
ExactMatrix beta_matrix(const SampleSet1& samples, const DegreeProfile& profile, const FieldElement& a);

struct AlphaBeta {
  FieldElement alpha;
  FieldElement beta;
};

/// Throws SizeMismatch unless samples.size() == profile.l + 1.
AlphaBeta alpha_beta(const SampleSet1& samples, const DegreeProfile& profile, const FieldElement& a);

/// Closed form sign(n, m) = (-1)^(c0 + c1 n + c2 m + c3 nm) fitted to
/// measured ratios f(a) beta / alpha.
struct SignCalibration {
  std::array<int, 4> exponents{};
  struct Observation {
    int n;
    int m;
    int sign;
  };
  std::vector<Observation> observations;

  int sign(int n, int m) const {
    return (exponents[0] + exponents[1] * n + exponents[2] * m + exponents[3] * n * m) % 2 ? -1 : 1;
  }
};

/// Measures the sign on the grid n, m <= 4 with random known functions and
/// fits the closed form. Throws CalibrationFailure when a ratio is not +-1 or
/// no closed form of that shape fits.
SignCalibration calibrate_sign(std::uint64_t seed = 0x5eed);

/// interp_sign(n, m) * alpha / beta. Throws BetaZero.
FieldElement interp_point(const SampleSet1& samples, const DegreeProfile& profile, const FieldElement& a);

/// Solves f_i Q(a_i) - P(a_i) = 0 over all samples for deg P <= n_deg,
/// deg Q <= m_deg. Throws SizeMismatch (fewer than n_deg + m_deg + 2 samples),
/// NoFit, or Ambiguous.
RatFun1 fit_ratfun(const SampleSet1& samples, int n_deg, int m_deg);

/// A univariate partial black box; nullopt means "undefined here".
struct UnivariateOracle {
  Field field;
  std::function<std::optional<FieldElement>(const FieldElement&)> eval;
};

struct SamplingConfig {
  int max_degree = 16;
  int validation_extra = 3;
  std::uint64_t height_bound = 10;
  /// Integer added to every drawn abscissa.
  long shift = 0;
  int max_consecutive_failures = 100;
};

struct ProfileFit {
  DegreeProfile profile;
  RatFun1 fit;
};

/// Walks total degree t = 0..max_degree and, for each t, n_deg = 0..t; the
/// first fit that also matches validation_extra further points wins.
/// Throws BudgetExhausted or DomainTooSparse.
ProfileFit detect_and_fit(const UnivariateOracle& oracle, const SamplingConfig& cfg, Rng& rng);
DegreeProfile detect_profile(const UnivariateOracle& oracle, const SamplingConfig& cfg, Rng& rng);

}  // namespace ratrecon
