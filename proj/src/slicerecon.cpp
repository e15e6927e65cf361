#include "ratrecon/slicerecon.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <memory>
#include <mutex>
#include <unordered_set>

namespace ratrecon {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

SamplingConfig sampling_of(const ReconConfig& cfg) {
  SamplingConfig s;
  s.max_degree = cfg.max_degree;
  s.validation_extra = cfg.validation_extra;
  s.height_bound = cfg.height_bound;
  return s;
}

std::vector<FieldElement> random_tuple(const Field& f, std::size_t len, std::uint64_t height, Rng& rng) {
  std::vector<FieldElement> out;
  out.reserve(len);
  for (std::size_t i = 0; i < len; ++i) out.push_back(random_element(f, rng, height));
  return out;
}

// Oracle whose calls go through one mutex.
SliceOracle serialized(const SliceOracle& oracle) {
  if (!oracle.serial) return oracle;
  auto lock = std::make_shared<std::mutex>();
  SliceOracle out = oracle;
  out.serial = false;
  out.eval = [lock, inner = oracle.eval](std::span<const FieldElement> x) {
    std::lock_guard guard(*lock);
    return inner(x);
  };
  return out;
}

// x |-> oracle(x, b) in arity - 1 variables.
SliceOracle fix_last(const SliceOracle& oracle, const FieldElement& b) {
  SliceOracle out = oracle;
  --out.arity;
  out.eval = [inner = oracle.eval, b](std::span<const FieldElement> x) {
    std::vector<FieldElement> full(x.begin(), x.end());
    full.push_back(b);
    return inner(full);
  };
  return out;
}

ReconReport reconstruct_impl(const SliceOracle& oracle, const ReconConfig& cfg, int threads);

ReconReport base_case(const SliceOracle& oracle, const ReconConfig& cfg, Rng& rng) {
  const auto t0 = Clock::now();
  const UnivariateOracle uni{oracle.field, [&oracle](const FieldElement& a) {
                               const FieldElement pt[1] = {a};
                               return oracle.eval(pt);
                             }};
  auto fit = detect_and_fit(uni, sampling_of(cfg), rng);
  ReconReport report{RatFunN::from_ratfun1(fit.fit), 1, fit.profile, {}, {}, {}, {}, {}};
  report.elapsed_ms["fit"] = ms_since(t0);
  return report;
}

}  // namespace

UnivariateOracle slice(const SliceOracle& oracle, std::size_t axis, std::vector<FieldElement> fixed) {
  if (axis >= oracle.arity || fixed.size() + 1 != oracle.arity)
    throw Error(Errc::SizeMismatch, "slice needs an axis below the arity and arity - 1 fixed coordinates");
  return {oracle.field, [eval = oracle.eval, axis, fixed = std::move(fixed)](const FieldElement& a) {
            std::vector<FieldElement> pt = fixed;
            pt.insert(pt.begin() + static_cast<std::ptrdiff_t>(axis), a);
            return eval(pt);
          }};
}

SliceHistogram classify_slices(const SliceOracle& oracle, std::size_t axis, const ReconConfig& cfg, Rng& rng) {
  if (oracle.arity < 2) throw Error(Errc::SizeMismatch, "slice classification needs arity >= 2");
  const SamplingConfig scfg = sampling_of(cfg);
  SliceHistogram hist;
  for (int t = 0; t < cfg.samples_per_class; ++t) {
    auto fixed = random_tuple(oracle.field, oracle.arity - 1, cfg.height_bound, rng);
    ++hist.slices;
    try {
      const auto p = detect_profile(slice(oracle, axis, std::move(fixed)), scfg, rng);
      ++hist.counts[{p.d, p.e}];
    } catch (const Error& e) {
      if (e.code() != Errc::BudgetExhausted && e.code() != Errc::DomainTooSparse) throw;
      ++hist.failures;
    }
  }
  if (hist.failures * 5 > hist.slices)
    throw Error(Errc::TooManyFailures, std::to_string(hist.failures) + " of " + std::to_string(hist.slices) +
                                           " slices along axis " + std::to_string(axis) + " have no rational profile within budget");
  return hist;
}

std::pair<int, int> dominant_class(const SliceHistogram& hist) {
  if (hist.counts.empty()) throw Error(Errc::EmptyHistogram, "no classified slices");
  auto better = [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    const auto [da, ea] = a.first;
    const auto [db, eb] = b.first;
    if (da != db) return da < db;
    if (std::abs(ea) != std::abs(eb)) return std::abs(ea) < std::abs(eb);
    return ea >= 0 && eb < 0;
  };
  return std::min_element(hist.counts.begin(), hist.counts.end(), better)->first;
}

std::vector<FieldElement> choose_anchors(const SliceOracle& oracle, std::size_t axis, const DegreeProfile& profile,
                                         const ReconConfig& cfg, Rng& rng) {
  std::vector<FieldElement> anchors;
  std::unordered_set<FieldElement> used;
  const int needed = (cfg.anchor_probes * 95 + 99) / 100;
  for (int i = 0; i <= profile.l; ++i) {
    bool found = false;
    for (int attempt = 0; attempt < 100 && !found; ++attempt) {
      FieldElement b = random_element(oracle.field, rng, cfg.height_bound);
      if (used.count(b)) continue;
      int defined = 0;
      for (int probe = 0; probe < cfg.anchor_probes; ++probe) {
        auto pt = random_tuple(oracle.field, oracle.arity - 1, cfg.height_bound, rng);
        pt.insert(pt.begin() + static_cast<std::ptrdiff_t>(axis), b);
        if (oracle.eval(pt)) ++defined;
      }
      if (defined >= needed) {
        used.insert(b);
        anchors.push_back(std::move(b));
        found = true;
      }
    }
    if (!found)
      throw Error(Errc::AnchorSearchFailed, "no usable anchor " + std::to_string(i) + " along axis " + std::to_string(axis) + " after 100 attempts");
  }
  return anchors;
}

PhiPsi build_phi_psi(const std::vector<RatFunN>& h, const std::vector<FieldElement>& anchors, const DegreeProfile& profile) {
  if (h.size() != anchors.size() || h.size() != static_cast<std::size_t>(profile.l + 1))
    throw Error(Errc::SizeMismatch, "need l + 1 anchors and restrictions");
  const Field& f = h.front().field();
  const std::size_t k = h.front().nvars() + 1, size = static_cast<std::size_t>(profile.l + 2);
  const int n = profile.n, m = profile.m;
  const PolyN zero(f, k), y = PolyN::variable(f, k, k - 1);
  PhiPsi out{Matrix<PolyN>(size, size, zero), Matrix<PolyN>(size, size, zero), {}};

  PolyN ypow = zero.one_like();
  for (int j = 0; j <= std::max(n, m); ++j) {
    if (j <= n) out.phi(0, static_cast<std::size_t>(j)) = ypow;
    if (j <= m) out.psi(0, static_cast<std::size_t>(j)) = ypow;
    ypow = ypow * y;
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    // the one factor applied to row i + 1 of both matrices
    const PolyN& factor = out.row_factors.emplace_back(h[i].den().with_nvars(k));
    const PolyN num = h[i].num().with_nvars(k);
    FieldElement bpow = f.one();
    for (int j = 0; j <= std::max(n, m); ++j) {
      const auto c = static_cast<std::size_t>(j);
      if (j <= n) {
        out.phi(i + 1, c) = factor.scaled(bpow);
        out.psi(i + 1, static_cast<std::size_t>(m + 1) + c) = factor.scaled(bpow);
      }
      if (j <= m) {
        out.phi(i + 1, static_cast<std::size_t>(n + 1) + c) = num.scaled(bpow);
        out.psi(i + 1, c) = num.scaled(bpow);
      }
      bpow *= anchors[i];
    }
  }
  return out;
}

VerificationCounts verify_agreement(const SliceOracle& oracle, const RatFunN& g, int trials, std::uint64_t height_bound,
                                    Rng& rng) {
  if (g.nvars() != oracle.arity) throw Error(Errc::SizeMismatch, "candidate and oracle have different arity");
  VerificationCounts c;
  for (int t = 0; t < trials; ++t) {
    const auto pt = random_tuple(oracle.field, oracle.arity, height_bound, rng);
    ++c.trials;
    const auto want = oracle.eval(pt);
    const auto got = g.try_eval(pt);
    if (!want || !got) ++c.undefined_skips;
    else if (*want == *got) ++c.agreements;
    else if (!c.first_mismatch) c.first_mismatch = Mismatch{pt, *want, *got};
  }
  return c;
}

namespace {

ReconReport reconstruct_impl(const SliceOracle& oracle, const ReconConfig& cfg, int threads) {
  Rng rng(cfg.seed);
  std::optional<ReconReport> built;
  if (oracle.arity == 1) {
    built = base_case(oracle, cfg, rng);
  } else {
    const std::size_t axis = oracle.arity - 1;
    std::map<std::string, double> elapsed;
    auto t0 = Clock::now();
    SliceHistogram hist = classify_slices(oracle, axis, cfg, rng);
    const auto [d, e] = dominant_class(hist);
    const DegreeProfile profile = DegreeProfile::from_degree_ord(d, e);
    elapsed["classify"] = ms_since(t0);

    t0 = Clock::now();
    std::vector<FieldElement> anchors = choose_anchors(oracle, axis, profile, cfg, rng);
    elapsed["anchors"] = ms_since(t0);

    t0 = Clock::now();
    std::vector<ReconReport> children;
    auto child = [&](std::size_t i) {
      ReconConfig sub = cfg;
      sub.seed = Rng::derived(cfg.seed, i).seed();
      return reconstruct_impl(fix_last(oracle, anchors[i]), sub, 1);
    };
    if (threads > 1) {
      for (std::size_t start = 0; start < anchors.size(); start += static_cast<std::size_t>(threads)) {
        std::vector<std::future<ReconReport>> batch;
        for (std::size_t i = start; i < std::min(anchors.size(), start + static_cast<std::size_t>(threads)); ++i)
          batch.push_back(std::async(std::launch::async, child, i));
        for (auto& fut : batch) children.push_back(fut.get());
      }
    } else {
      for (std::size_t i = 0; i < anchors.size(); ++i) children.push_back(child(i));
    }
    elapsed["children"] = ms_since(t0);

    t0 = Clock::now();
    std::vector<RatFunN> h;
    for (const auto& c : children) h.push_back(c.result);
    const PhiPsi mats = build_phi_psi(h, anchors, profile);
    PolyN phi = det_cofactor(mats.phi), psi = det_cofactor(mats.psi);
    if (psi.is_zero())
      throw Error(Errc::VerificationFailed, "interpolation denominator vanishes identically; anchors or profile unusable");
    if (interp_sign(profile.n, profile.m) < 0) phi = -phi;
    RatFunN g = RatFunN::normalize(std::move(phi), std::move(psi));
    elapsed["assemble"] = ms_since(t0);

    built = ReconReport{std::move(g), oracle.arity, profile, std::move(hist), std::move(anchors), {}, std::move(children), std::move(elapsed)};
  }

  const auto t0 = Clock::now();
  built->verification = verify_agreement(oracle, built->result, cfg.verify_trials, cfg.height_bound, rng);
  built->elapsed_ms["verify"] = ms_since(t0);
  const auto& v = built->verification;
  const std::size_t defined = v.trials - v.undefined_skips;
  if (v.agreements != defined || (v.trials > 0 && defined == 0)) {
    const std::string what = std::to_string(v.agreements) + " of " + std::to_string(defined) +
                             " defined trials agree with " + built->result.to_string();
    throw VerificationFailure(*std::move(built), what);
  }
  return *std::move(built);
}

}  // namespace

ReconReport reconstruct(const SliceOracle& oracle, const ReconConfig& cfg) {
  if (oracle.arity == 0) throw Error(Errc::SizeMismatch, "oracle arity must be positive");
  return reconstruct_impl(serialized(oracle), cfg, std::max(1, cfg.threads));
}

}  // namespace ratrecon
