#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ratrecon/detinterp.hpp"
#include "ratrecon/matrix.hpp"
#include "ratrecon/polyn.hpp"

namespace ratrecon {

/// Partial black box k^arity -> k. nullopt means "undefined here"; eval
/// must be deterministic. Set `serial` when eval is not safe to call from
/// several threads at once.
struct SliceOracle {
  Field field;
  std::size_t arity = 1;
  std::function<std::optional<FieldElement>(std::span<const FieldElement>)> eval;
  bool serial = false;
};

struct ReconConfig {
  /// Slices drawn per classification (T).
  int samples_per_class = 16;
  int max_degree = 16;
  int validation_extra = 3;
  int verify_trials = 100;
  std::uint64_t height_bound = 10;
  std::uint64_t seed = 0;
  /// Workers for the top-level recursive reconstructions.
  int threads = 1;
  /// Fixed tuples probed per anchor candidate.
  int anchor_probes = 20;
};

struct SliceHistogram {
  /// (d, e) -> number of slices.
  std::map<std::pair<int, int>, std::size_t> counts;
  /// Slices on which detection gave up (BudgetExhausted or DomainTooSparse).
  std::size_t failures = 0;
  std::size_t slices = 0;
};

struct Mismatch {
  std::vector<FieldElement> point;
  FieldElement expected;
  FieldElement got;
  friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

struct VerificationCounts {
  std::size_t trials = 0;
  std::size_t agreements = 0;
  std::size_t undefined_skips = 0;
  /// First point where oracle and candidate disagree.
  std::optional<Mismatch> first_mismatch;
  friend bool operator==(const VerificationCounts&, const VerificationCounts&) = default;
};

struct ReconReport {
  RatFunN result;
  std::size_t arity;
  /// Profile along the last axis (the dominant class, or the fitted one for arity 1).
  DegreeProfile profile;
  SliceHistogram histogram;
  std::vector<FieldElement> anchors;
  VerificationCounts verification;
  /// Reports of the reconstructions of f(., b_i), one per anchor.
  std::vector<ReconReport> children;
  /// Wall time per phase in milliseconds.
  std::map<std::string, double> elapsed_ms;
};

/// VerificationFailed raised by reconstruct, carrying the rejected report.
class VerificationFailure : public Error {
public:
  VerificationFailure(ReconReport report, const std::string& what)
      : Error(Errc::VerificationFailed, what), report_(std::move(report)) {}
  const ReconReport& report() const noexcept { return report_; }

private:
  ReconReport report_;
};

/// a |-> oracle(fixed[0..axis), a, fixed[axis..)).
UnivariateOracle slice(const SliceOracle& oracle, std::size_t axis, std::vector<FieldElement> fixed);

/// Detects the (d, e) profile of cfg.samples_per_class random slices along
/// `axis`. Throws TooManyFailures when more than 20% of them fail.
SliceHistogram classify_slices(const SliceOracle& oracle, std::size_t axis, const ReconConfig& cfg, Rng& rng);

/// Most frequent (d, e); ties go to smaller d, then smaller |e|, then e >= 0.
/// Throws EmptyHistogram.
std::pair<int, int> dominant_class(const SliceHistogram& hist);

/// profile.l + 1 distinct values along `axis` at which the oracle is defined
/// for at least 95% of a fresh batch of fixed tuples. Throws AnchorSearchFailed.
std::vector<FieldElement> choose_anchors(const SliceOracle& oracle, std::size_t axis, const DegreeProfile& profile,
                                         const ReconConfig& cfg, Rng& rng);

/// The two determinants of the interpolation step as matrices over the
/// polynomial ring in k variables (the last one is y). Data row i of both
/// matrices has been multiplied by row_factors[i], the denominator of h_i.
struct PhiPsi {
  Matrix<PolyN> phi;
  Matrix<PolyN> psi;
  std::vector<PolyN> row_factors;
};

/// h[i] is f(., anchors[i]) in k - 1 variables.
PhiPsi build_phi_psi(const std::vector<RatFunN>& h, const std::vector<FieldElement>& anchors,
                     const DegreeProfile& profile);

/// Compares g with the oracle on `trials` random points; points where either
/// side is undefined are skipped.
VerificationCounts verify_agreement(const SliceOracle& oracle, const RatFunN& g, int trials, std::uint64_t height_bound,
                                    Rng& rng);

/// Recovers the rational function behind the oracle by recursion on the last
/// variable. Throws TooManyFailures, AnchorSearchFailed, BudgetExhausted,
/// DomainTooSparse or VerificationFailed.
ReconReport reconstruct(const SliceOracle& oracle, const ReconConfig& cfg);

}  // namespace ratrecon
