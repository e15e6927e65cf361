#include "ratrecon/detinterp.hpp"

#include <unordered_set>

namespace ratrecon {

namespace {

void require_distinct(std::span<const FieldElement> points) {
  std::unordered_set<FieldElement> seen;
  for (const auto& p : points)
    if (!seen.insert(p).second) throw Error(Errc::DegenerateInput, "repeated node " + p.to_string());
}

// x^0..x^k
std::vector<FieldElement> powers(const FieldElement& x, int k) {
  std::vector<FieldElement> out{x.one_like()};
  for (int i = 1; i <= k; ++i) out.push_back(out.back() * x);
  return out;
}

Poly1 random_poly_of_degree(const Field& f, Rng& rng, int degree) {
  std::vector<FieldElement> cs;
  for (int i = 0; i < degree; ++i) cs.push_back(random_element(f, rng, 50));
  cs.push_back(random_nonzero(f, rng, 50));
  return Poly1(f, std::move(cs));
}

}  // namespace

// ---------------------------------------------------------------- samples and profiles

SampleSet1::SampleSet1(Field field, std::vector<Sample> points) : field_(field), points_(std::move(points)) {
  std::vector<FieldElement> xs;
  xs.reserve(points_.size());
  for (const auto& s : points_) {
    if (s.a.field() != field_ || s.f.field() != field_) throw Error(Errc::FieldMismatch, "sample outside " + field_.to_string());
    xs.push_back(s.a);
  }
  require_distinct(xs);
}

SampleSet1 SampleSet1::prefix(std::size_t k) const {
  if (k > points_.size()) throw Error(Errc::SizeMismatch, "prefix longer than sample set");
  return SampleSet1(field_, std::vector<Sample>(points_.begin(), points_.begin() + static_cast<std::ptrdiff_t>(k)));
}

DegreeProfile DegreeProfile::from_degree_ord(int d, int e) {
  DegreeProfile p;
  p.d = d;
  p.e = e;
  p.n = d + std::min(0, e);
  p.m = d - std::max(0, e);
  p.l = p.n + p.m;
  if (d < 0 || p.n < 0 || p.m < 0)
    throw Error(Errc::SizeMismatch, "invalid degree profile (d=" + std::to_string(d) + ", e=" + std::to_string(e) + ")");
  return p;
}

DegreeProfile DegreeProfile::of(const RatFun1& f) {
  if (f.is_zero()) return from_degree_ord(0, 0);
  const auto de = degree_and_ord(f);
  return from_degree_ord(de.deg, de.ord_inf);
}

// ---------------------------------------------------------------- determinants

ExactMatrix lemma44_matrix(const Poly1& p, const Poly1& q, const FieldElement& a, std::span<const FieldElement> points) {
  if (p.is_zero() || q.is_zero()) throw Error(Errc::ZeroPolynomial, "determinant identity matrix needs nonzero P and Q");
  const int n = p.degree(), m = q.degree();
  const auto size = static_cast<std::size_t>(n + m + 2);
  if (points.size() + 1 != size)
    throw Error(Errc::SizeMismatch, "expected " + std::to_string(size - 1) + " nodes, got " + std::to_string(points.size()));
  ExactMatrix mat(size, size, a.zero_like());
  const auto top = powers(a, m);
  for (int j = 0; j <= m; ++j) mat(0, static_cast<std::size_t>(j)) = top[static_cast<std::size_t>(j)];
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto pw = powers(points[i], std::max(n, m));
    const FieldElement pv = p.eval(points[i]), qv = q.eval(points[i]);
    for (int j = 0; j <= m; ++j) mat(i + 1, static_cast<std::size_t>(j)) = pv * pw[static_cast<std::size_t>(j)];
    for (int j = 0; j <= n; ++j) mat(i + 1, static_cast<std::size_t>(m + 1 + j)) = qv * pw[static_cast<std::size_t>(j)];
  }
  return mat;
}

FieldElement delta_lemma44(const Poly1& p, const Poly1& q, const FieldElement& a, std::span<const FieldElement> points) {
  require_distinct(points);
  return det_bareiss(lemma44_matrix(p, q, a, points));
}

ExactMatrix alpha_matrix(const SampleSet1& samples, const DegreeProfile& profile, const FieldElement& a) {
  const int n = profile.n, m = profile.m;
  const auto size = static_cast<std::size_t>(profile.l + 2);
  if (samples.size() + 1 != size)
    throw Error(Errc::SizeMismatch, "alpha needs l + 1 = " + std::to_string(profile.l + 1) + " samples, got " + std::to_string(samples.size()));
  ExactMatrix mat(size, size, samples.field().zero());
  const auto top = powers(a, n);
  for (int j = 0; j <= n; ++j) mat(0, static_cast<std::size_t>(j)) = top[static_cast<std::size_t>(j)];
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto pw = powers(samples[i].a, std::max(n, m));
    for (int j = 0; j <= n; ++j) mat(i + 1, static_cast<std::size_t>(j)) = pw[static_cast<std::size_t>(j)];
    for (int j = 0; j <= m; ++j) mat(i + 1, static_cast<std::size_t>(n + 1 + j)) = samples[i].f * pw[static_cast<std::size_t>(j)];
  }
  return mat;
}

ExactMatrix beta_matrix(const SampleSet1& samples, const DegreeProfile& profile, const FieldElement& a) {
  const int n = profile.n, m = profile.m;
  const auto size = static_cast<std::size_t>(profile.l + 2);
  if (samples.size() + 1 != size)
    throw Error(Errc::SizeMismatch, "beta needs l + 1 = " + std::to_string(profile.l + 1) + " samples, got " + std::to_string(samples.size()));
  ExactMatrix mat(size, size, samples.field().zero());
  // first row carries a^0..a^m so that the blocks have widths m + 1 and n + 1
  const auto top = powers(a, m);
  for (int j = 0; j <= m; ++j) mat(0, static_cast<std::size_t>(j)) = top[static_cast<std::size_t>(j)];
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto pw = powers(samples[i].a, std::max(n, m));
    for (int j = 0; j <= m; ++j) mat(i + 1, static_cast<std::size_t>(j)) = samples[i].f * pw[static_cast<std::size_t>(j)];
    for (int j = 0; j <= n; ++j) mat(i + 1, static_cast<std::size_t>(m + 1 + j)) = pw[static_cast<std::size_t>(j)];
  }
  return mat;
}

AlphaBeta alpha_beta(const SampleSet1& samples, const DegreeProfile& profile, const FieldElement& a) {
  return {det_bareiss(alpha_matrix(samples, profile, a)), det_bareiss(beta_matrix(samples, profile, a))};
}

FieldElement interp_point(const SampleSet1& samples, const DegreeProfile& profile, const FieldElement& a) {
  const auto [alpha, beta] = alpha_beta(samples, profile, a);
  if (beta.is_zero()) throw Error(Errc::BetaZero, "beta vanishes: wrong profile or point outside the domain");
  const FieldElement v = alpha / beta;
  return interp_sign(profile.n, profile.m) < 0 ? -v : v;
}

SignCalibration calibrate_sign(std::uint64_t seed) {
  const Field f = Field::prime(1000003);
  Rng rng(seed);
  SignCalibration cal;
  for (int n = 0; n <= 4; ++n) {
    for (int m = 0; m <= 4; ++m) {
      for (;;) {
        const Poly1 p = random_poly_of_degree(f, rng, n), q = random_poly_of_degree(f, rng, m);
        if (gcd(p, q).degree() > 0) continue;
        std::vector<Sample> pts;
        std::unordered_set<FieldElement> used;
        while (static_cast<int>(pts.size()) < n + m + 1) {
          const FieldElement x = random_element(f, rng, 0);
          if (q.eval(x).is_zero() || !used.insert(x).second) continue;
          pts.push_back({x, p.eval(x) / q.eval(x)});
        }
        const FieldElement a = random_element(f, rng, 0);
        if (q.eval(a).is_zero() || p.eval(a).is_zero()) continue;
        const auto profile = DegreeProfile::of(RatFun1::normalize(p, q));
        const auto [alpha, beta] = alpha_beta(SampleSet1(f, std::move(pts)), profile, a);
        if (beta.is_zero() || alpha.is_zero())
          throw Error(Errc::CalibrationFailure, "degenerate determinant at (n, m) = (" + std::to_string(n) + ", " + std::to_string(m) + ")");
        const FieldElement ratio = p.eval(a) / q.eval(a) * beta / alpha;
        int sign = 0;
        if (ratio == f.one()) sign = 1;
        else if (ratio == -f.one()) sign = -1;
        else throw Error(Errc::CalibrationFailure, "ratio " + ratio.to_signed_string() + " is not +-1");
        cal.observations.push_back({n, m, sign});
        break;
      }
    }
  }
  for (int bits = 0; bits < 16; ++bits) {
    cal.exponents = {bits & 1, bits >> 1 & 1, bits >> 2 & 1, bits >> 3 & 1};
    bool fits = true;
    for (const auto& o : cal.observations) fits = fits && cal.sign(o.n, o.m) == o.sign;
    if (fits) return cal;
  }
  throw Error(Errc::CalibrationFailure, "no closed form (-1)^(c0 + c1 n + c2 m + c3 nm) fits the observations");
}

// ---------------------------------------------------------------- fitting

RatFun1 fit_ratfun(const SampleSet1& samples, int n_deg, int m_deg) {
  if (n_deg < 0 || m_deg < 0) throw Error(Errc::SizeMismatch, "negative degree bound");
  const auto cols = static_cast<std::size_t>(n_deg + m_deg + 2);
  if (samples.size() < cols)
    throw Error(Errc::SizeMismatch, "fit needs at least " + std::to_string(cols) + " samples, got " + std::to_string(samples.size()));
  const Field& f = samples.field();
  ExactMatrix sys(samples.size(), cols, f.zero());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto pw = powers(samples[i].a, std::max(n_deg, m_deg));
    for (int j = 0; j <= n_deg; ++j) sys(i, static_cast<std::size_t>(j)) = -pw[static_cast<std::size_t>(j)];
    for (int j = 0; j <= m_deg; ++j) sys(i, static_cast<std::size_t>(n_deg + 1 + j)) = samples[i].f * pw[static_cast<std::size_t>(j)];
  }
  const auto basis = nullspace(sys);
  if (basis.empty()) throw Error(Errc::NoFit, "no rational function of degrees (" + std::to_string(n_deg) + ", " + std::to_string(m_deg) + ") fits the samples");

  std::optional<RatFun1> result;
  for (const auto& v : basis) {
    Poly1 p(f, std::vector<FieldElement>(v.begin(), v.begin() + n_deg + 1));
    Poly1 q(f, std::vector<FieldElement>(v.begin() + n_deg + 1, v.end()));
    if (q.is_zero()) throw Error(Errc::NoFit, "only solutions have a zero denominator");
    RatFun1 r = RatFun1::normalize(std::move(p), std::move(q));
    if (!result) result = std::move(r);
    else if (!(*result == r)) throw Error(Errc::Ambiguous, "nullspace of dimension " + std::to_string(basis.size()) + " holds distinct functions");
  }
  for (const auto& s : samples.points()) {
    auto v = result->try_eval(s.a);
    if (!v || !(*v == s.f)) throw Error(Errc::NoFit, "fitted function disagrees with sample at " + s.a.to_string());
  }
  return *std::move(result);
}

// ---------------------------------------------------------------- detection

ProfileFit detect_and_fit(const UnivariateOracle& oracle, const SamplingConfig& cfg, Rng& rng) {
  const Field& f = oracle.field;
  const FieldElement shift = f.from_int(cfg.shift);
  std::vector<Sample> pool;
  std::unordered_set<FieldElement> tried;
  auto grow_to = [&](std::size_t want) {
    int failures = 0;
    while (pool.size() < want) {
      FieldElement x = random_element(f, rng, cfg.height_bound) + shift;
      if (tried.insert(x).second) {
        if (auto v = oracle.eval(x)) {
          pool.push_back({std::move(x), *std::move(v)});
          failures = 0;
          continue;
        }
      }
      if (++failures >= cfg.max_consecutive_failures)
        throw Error(Errc::DomainTooSparse, std::to_string(failures) + " consecutive draws were undefined or repeated");
    }
  };

  for (int t = 0; t <= cfg.max_degree; ++t) {
    const auto need = static_cast<std::size_t>(t + 2 + cfg.validation_extra);
    grow_to(need);
    const SampleSet1 samples(f, std::vector<Sample>(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(need)));
    for (int n_deg = 0; n_deg <= t; ++n_deg) {
      try {
        RatFun1 fit = fit_ratfun(samples, n_deg, t - n_deg);
        return {DegreeProfile::of(fit), std::move(fit)};
      } catch (const Error& e) {
        if (e.code() != Errc::NoFit && e.code() != Errc::Ambiguous) throw;
      }
    }
  }
  throw Error(Errc::BudgetExhausted, "no rational profile up to total degree " + std::to_string(cfg.max_degree));
}

DegreeProfile detect_profile(const UnivariateOracle& oracle, const SamplingConfig& cfg, Rng& rng) {
  return detect_and_fit(oracle, cfg, rng).profile;
}

}  // namespace ratrecon
