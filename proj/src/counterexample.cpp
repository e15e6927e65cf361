#include "ratrecon/counterexample.hpp"

#include <algorithm>
#include <sstream>

namespace ratrecon {

namespace {

const Field kQ = Field::rationals();

FieldElement enumerated(std::uint64_t i) { return FieldElement(enumerate_countable(i)); }

void check_cap(std::uint64_t i, std::uint64_t cap) {
  if (i >= cap) throw Error(Errc::SizeMismatch, "index " + std::to_string(i) + " not below cap " + std::to_string(cap));
}

// f(a_n, a_m) from a precomputed enumeration.
FieldElement f_from(const std::vector<FieldElement>& a, std::size_t n, std::size_t m) {
  FieldElement sum = kQ.zero(), prod = kQ.one();
  for (std::size_t i = 0; i < std::min(n, m); ++i) {
    prod *= (a[n] - a[i]) * (a[m] - a[i]);
    sum += prod;
  }
  return sum;
}

struct Exponent {
  unsigned i;
  unsigned j;
};

std::vector<Exponent> monomials_up_to(int d) {
  std::vector<Exponent> out;
  for (int t = 0; t <= d; ++t)
    for (int i = t; i >= 0; --i) out.push_back({static_cast<unsigned>(i), static_cast<unsigned>(t - i)});
  return out;
}

struct Point {
  std::size_t n;
  std::size_t m;
};

class FitProblem {
public:
  FitProblem(const CounterexampleTable& table, std::vector<Point> order, int d)
      : table_(table), order_(std::move(order)), monos_(monomials_up_to(d)) {}

  std::size_t unknowns() const { return 2 * monos_.size(); }

  // Solution space of f Q - P = 0 on the first k probe points.
  std::vector<std::vector<FieldElement>> solutions(std::size_t k) const {
    const std::size_t u = monos_.size();
    ExactMatrix sys(k, 2 * u, kQ.zero());
    for (std::size_t r = 0; r < k; ++r) {
      const auto& p = order_[r];
      const FieldElement& f = table_.values(p.n, p.m);
      for (std::size_t c = 0; c < u; ++c) {
        const FieldElement mono = monomial_at(c, p);
        sys(r, c) = -mono;
        sys(r, u + c) = f * mono;
      }
    }
    return nullspace(sys);
  }

  // No admissible P/Q fits the first k points: either no solution at all,
  // or every solution has Q vanishing at one of those points.
  bool refuted(std::size_t k) const {
    const auto basis = solutions(k);
    if (basis.empty()) return true;
    const std::size_t u = monos_.size();
    for (std::size_t r = 0; r < k; ++r) {
      bool all_vanish = true;
      for (const auto& v : basis) {
        FieldElement q = kQ.zero();
        for (std::size_t c = 0; c < u; ++c) q += v[u + c] * monomial_at(c, order_[r]);
        if (!q.is_zero()) {
          all_vanish = false;
          break;
        }
      }
      if (all_vanish) return true;
    }
    return false;
  }

private:
  FieldElement monomial_at(std::size_t c, const Point& p) const {
    return table_.enumeration[p.n].pow(monos_[c].i) * table_.enumeration[p.m].pow(monos_[c].j);
  }

  const CounterexampleTable& table_;
  std::vector<Point> order_;
  std::vector<Exponent> monos_;
};

}  // namespace

FieldElement f_counter(std::uint64_t n, std::uint64_t m, std::uint64_t cap) {
  check_cap(n, cap);
  check_cap(m, cap);
  std::vector<FieldElement> a;
  for (std::uint64_t i = 0; i <= std::max(n, m); ++i) a.push_back(enumerated(i));
  return f_from(a, n, m);
}

Poly1 slice_poly(std::uint64_t m, std::uint64_t cap) {
  check_cap(m, cap);
  const FieldElement am = enumerated(m);
  Poly1 sum(kQ), prod = Poly1::constant(kQ.one());
  for (std::uint64_t i = 0; i < m; ++i) {
    const FieldElement ai = enumerated(i);
    prod = prod * Poly1::linear_root(ai).scaled(am - ai);
    sum = sum + prod;
  }
  return sum;
}

CounterexampleTable counter_table(std::size_t n) {
  CounterexampleTable t{{}, ExactMatrix(n, n, kQ.zero())};
  for (std::size_t i = 0; i < n; ++i) t.enumeration.push_back(enumerated(i));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) t.values(r, c) = f_from(t.enumeration, r, c);
  return t;
}

std::string table_csv(const CounterexampleTable& table) {
  std::ostringstream out;
  out << "n,m,a_n,a_m,f\n";
  for (std::size_t r = 0; r < table.values.rows(); ++r)
    for (std::size_t c = 0; c < table.values.cols(); ++c)
      out << r << ',' << c << ',' << table.enumeration[r].to_string() << ',' << table.enumeration[c].to_string() << ','
          << table.values(r, c).to_string() << '\n';
  return out.str();
}

NonrationalityCertificate nonrationality_report(int d_max, std::size_t grid) {
  if (d_max < 0 || grid < static_cast<std::size_t>(2 * d_max + 2))
    throw Error(Errc::SizeMismatch, "grid must be at least 2 D_max + 2");
  const CounterexampleTable table = counter_table(grid);
  std::vector<Point> order;
  for (std::size_t r = 0; r < grid; ++r)
    for (std::size_t c = 0; c < grid; ++c) order.push_back({r, c});
  std::stable_sort(order.begin(), order.end(),
                   [](const Point& a, const Point& b) { return std::max(a.n, a.m) < std::max(b.n, b.m); });

  NonrationalityCertificate cert{d_max, grid, {}};
  for (int d = 0; d <= d_max; ++d) {
    const FitProblem problem(table, order, d);
    DegreeRefutation entry{d, problem.unknowns(), false, std::nullopt, problem.solutions(order.size()).size()};
    if (problem.refuted(order.size())) {
      // refutation is monotone in the number of points, so bisect for the first one
      std::size_t lo = 1, hi = order.size();
      while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (problem.refuted(mid)) hi = mid;
        else lo = mid + 1;
      }
      const Point& p = order[lo - 1];
      entry.refuted = true;
      entry.witness = RefutationWitness{lo, p.n, p.m, table.enumeration[p.n], table.enumeration[p.m], table.values(p.n, p.m)};
    }
    cert.degrees.push_back(std::move(entry));
  }
  return cert;
}

}  // namespace ratrecon
